#include "cwpos/linalg.hpp"

#include <cmath>

#include "cwpos/errors.hpp"

namespace cwpos {

MinEigenpair min_eigenpair(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw InvalidArgument("min_eigenpair needs a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw InternalError("Hermitian eigensolver failed");
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

double min_eigenvalue(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InternalError("Hermitian eigensolver failed");
  return es.eigenvalues()(0);
}

double spectral_norm(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Complex complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

Eigen::VectorXcd random_unit_vector(std::mt19937_64& rng, int n) {
  Eigen::VectorXcd v(n);
  do {
    for (int j = 0; j < n; ++j) v(j) = complex_normal(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace cwpos
