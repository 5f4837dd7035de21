#include "cwpos/generators.hpp"

#include <cmath>

#include "cwpos/errors.hpp"
#include "cwpos/linalg.hpp"

namespace cwpos {

void GeneratorSpec::validate() const {
  if (n < 1 || n > kMaxDimension || r < 1 || m < 1 || !(scale > 0.0)) {
    throw InvalidArgument("generator spec needs n, r, m >= 1 and scale > 0");
  }
}

std::string to_string(GeneratorSpec::Kind kind) {
  switch (kind) {
    case GeneratorSpec::Kind::DualNakano: return "dual_nakano";
    case GeneratorSpec::Kind::LineSum: return "line_sum";
    case GeneratorSpec::Kind::PsdTensor: return "psd_tensor";
    case GeneratorSpec::Kind::ConvexMix: return "convex_mix";
    case GeneratorSpec::Kind::Indefinite: return "indefinite";
  }
  return "unknown";
}

GeneratorSpec::Kind parse_generator_kind(const std::string& name) {
  for (auto k : {GeneratorSpec::Kind::DualNakano, GeneratorSpec::Kind::LineSum, GeneratorSpec::Kind::PsdTensor,
                 GeneratorSpec::Kind::ConvexMix, GeneratorSpec::Kind::Indefinite}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown generator kind: " + name);
}

ExteriorForm hermitian_one_one(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw DimensionMismatch("expected a square matrix");
  const int n = static_cast<int>(h.rows());
  ExteriorForm out(n, 1, 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      out.add_term(MultiIndex::from_mask(1u << j), MultiIndex::from_mask(1u << k), Complex(0.0, 1.0) * h(j, k));
  return out;
}

ExteriorForm standard_kahler_form(int n) {
  return hermitian_one_one(Eigen::MatrixXcd::Identity(n, n));
}

Eigen::MatrixXcd one_one_matrix(const ExteriorForm& omega) {
  if (omega.p() != 1 || omega.q() != 1) throw InvalidArgument("expected a (1,1)-form");
  return coefficient_matrix(omega).matrix;
}

ExteriorForm random_kahler_form(int n, std::mt19937_64& rng) {
  Eigen::MatrixXcd b(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) b(j, k) = complex_normal(rng);
  const Eigen::MatrixXcd h = b * b.adjoint() / static_cast<double>(n) + 0.25 * Eigen::MatrixXcd::Identity(n, n);
  return hermitian_one_one(hermitian_part(h));
}

CurvaturePoint dual_nakano(int n, int r, int m, const std::vector<Complex>& a) {
  if (a.size() != static_cast<std::size_t>(r) * m * n) throw DimensionMismatch("expected r*m*n coefficients of A");
  CurvaturePoint c(n, r);
  auto at = [&](int alpha, int l, int j) { return a[static_cast<std::size_t>((alpha * m + l) * n + j)]; };
  for (int alpha = 0; alpha < r; ++alpha) {
    for (int beta = 0; beta < r; ++beta) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          Complex s{};
          for (int l = 0; l < m; ++l) s += at(alpha, l, j) * std::conj(at(beta, l, k));
          c.add_coefficient(alpha, beta, j, k, s);
        }
      }
    }
  }
  return c;
}

CurvaturePoint dual_nakano_sample(const GeneratorSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::vector<Complex> a(static_cast<std::size_t>(spec.r) * spec.m * spec.n);
  for (auto& z : a) z = spec.scale * complex_normal(rng);
  return dual_nakano(spec.n, spec.r, spec.m, a);
}

CurvaturePoint line_sum(int n, const std::vector<ExteriorForm>& omegas) {
  if (omegas.empty()) throw InvalidArgument("line_sum needs at least one form");
  CurvaturePoint c(n, static_cast<int>(omegas.size()));
  for (std::size_t a = 0; a < omegas.size(); ++a) {
    const ExteriorForm& w = omegas[a];
    if (w.dim() != n || w.p() != 1 || w.q() != 1 || !is_real(w)) {
      throw InvalidArgument("line_sum: form " + std::to_string(a + 1) + " is not a real (1,1)-form on C^n");
    }
    if (w.is_zero() || min_eigenvalue(one_one_matrix(w)) <= 0.0) {
      throw InvalidArgument("line_sum: form " + std::to_string(a + 1) + " is not strictly positive");
    }
    c.set_entry(static_cast<int>(a), static_cast<int>(a), Complex(0.0, -1.0) * w);
  }
  return c;
}

CurvaturePoint psd_tensor(const ExteriorForm& omega, const Eigen::MatrixXcd& p) {
  if (omega.p() != 1 || omega.q() != 1 || !is_real(omega)) throw InvalidArgument("psd_tensor: omega must be a real (1,1)-form");
  if (p.rows() != p.cols() || p.rows() < 1) throw DimensionMismatch("psd_tensor: P must be square");
  const double p_scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * p_scale) throw InvalidArgument("psd_tensor: P is not Hermitian");
  if (min_eigenvalue(p) < -1e-12 * p_scale) throw InvalidArgument("psd_tensor: P is not positive semidefinite");
  if (!omega.is_zero()) {
    const Eigen::MatrixXcd h = one_one_matrix(omega);
    if (min_eigenvalue(h) < -1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff())) {
      throw InvalidArgument("psd_tensor: omega is not positive semidefinite");
    }
  }
  const int r = static_cast<int>(p.rows());
  CurvaturePoint c(omega.dim(), r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) c.set_entry(a, b, (Complex(0.0, -1.0) * p(a, b)) * omega);
  return c;
}

CurvaturePoint epsilon_perturb(const CurvaturePoint& c, const ExteriorForm& omega, double eps) {
  if (!(eps >= 0.0)) throw InvalidArgument("epsilon_perturb needs eps >= 0");
  if (omega.dim() != c.dim() || omega.p() != 1 || omega.q() != 1 || !is_real(omega)) {
    throw InvalidArgument("epsilon_perturb: omega must be a real (1,1)-form on C^n");
  }
  if (omega.is_zero() || min_eigenvalue(one_one_matrix(omega)) <= 0.0) {
    throw InvalidArgument("epsilon_perturb: omega must be strictly positive");
  }
  CurvaturePoint out = c;
  if (eps == 0.0) return out;
  const ExteriorForm shift = Complex(0.0, -eps) * omega;
  for (int a = 0; a < c.rank(); ++a) out.set_entry(a, a, c.entry(a, a) + shift);
  return out;
}

CurvaturePoint convex_combine(const std::vector<CurvaturePoint>& cs, const std::vector<double>& weights) {
  if (cs.empty() || cs.size() != weights.size()) throw DimensionMismatch("convex_combine: one weight per curvature");
  CurvaturePoint out(cs.front().dim(), cs.front().rank());
  for (std::size_t s = 0; s < cs.size(); ++s) {
    if (!(weights[s] >= 0.0)) throw InvalidArgument("convex_combine: weights must be nonnegative");
    if (cs[s].dim() != out.dim() || cs[s].rank() != out.rank()) throw DimensionMismatch("convex_combine: shapes differ");
    if (weights[s] > 0.0) out += weights[s] * cs[s];
  }
  return out;
}

CurvaturePoint indefinite_control(int n, int r, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.r = r;
  spec.m = r;
  spec.seed = seed;
  CurvaturePoint c = dual_nakano_sample(spec);
  const Eigen::MatrixXcd block = c.coefficient_matrix().topLeftCorner(n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
  const double s = es.eigenvalues()(n - 1) + 1.0;
  for (int j = 0; j < n; ++j) c.add_coefficient(0, 0, j, j, -s);
  return c;
}

CurvaturePoint sample(const GeneratorSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case GeneratorSpec::Kind::DualNakano:
      return dual_nakano_sample(spec);
    case GeneratorSpec::Kind::LineSum: {
      std::vector<ExteriorForm> omegas;
      for (int a = 0; a < spec.r; ++a) omegas.push_back(spec.scale * random_kahler_form(spec.n, rng));
      return line_sum(spec.n, omegas);
    }
    case GeneratorSpec::Kind::PsdTensor: {
      const ExteriorForm omega = random_kahler_form(spec.n, rng);
      // P = B B^* with B of random rank in [1, r]
      const int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(spec.r));
      Eigen::MatrixXcd b(spec.r, rank);
      for (int a = 0; a < spec.r; ++a)
        for (int t = 0; t < rank; ++t) b(a, t) = complex_normal(rng);
      return spec.scale * psd_tensor(omega, hermitian_part(b * b.adjoint()));
    }
    case GeneratorSpec::Kind::ConvexMix: {
      std::vector<CurvaturePoint> parts;
      std::vector<double> weights;
      std::exponential_distribution<double> expo(1.0);
      for (auto kind : {GeneratorSpec::Kind::DualNakano, GeneratorSpec::Kind::PsdTensor, GeneratorSpec::Kind::LineSum}) {
        GeneratorSpec part = spec;
        part.kind = kind;
        part.m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(spec.r + 1));
        part.seed = rng();
        parts.push_back(sample(part));
        weights.push_back(expo(rng));
      }
      double total = 0.0;
      for (double w : weights) total += w;
      for (double& w : weights) w /= total;
      return convex_combine(parts, weights);
    }
    case GeneratorSpec::Kind::Indefinite:
      return indefinite_control(spec.n, spec.r, spec.seed);
  }
  throw InvalidArgument("unknown generator kind");
}

GeneratorSpec positive_control_spec(std::size_t index, int n, int r, std::uint64_t seed) {
  static constexpr GeneratorSpec::Kind kCycle[] = {GeneratorSpec::Kind::DualNakano, GeneratorSpec::Kind::LineSum,
                                                   GeneratorSpec::Kind::PsdTensor, GeneratorSpec::Kind::ConvexMix};
  std::mt19937_64 rng(seed);
  GeneratorSpec spec;
  spec.n = n;
  spec.r = r;
  spec.kind = kCycle[index % 4];
  spec.m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(r + 2));
  spec.seed = rng();
  spec.scale = 1.0;
  return spec;
}

}  // namespace cwpos
