#pragma once

// Random inputs and brute-force reference computations shared by the tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cwpos/chern_weil.hpp"
#include "cwpos/exterior_algebra.hpp"
#include "cwpos/linalg.hpp"

namespace testutil {

using namespace cwpos;

inline Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = complex_normal(rng);
  return m;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int size) {
  const Eigen::MatrixXcd b = random_matrix(rng, size, size);
  return hermitian_part(b + b.adjoint());
}

inline ExteriorForm random_form(std::mt19937_64& rng, int n, int p, int q) {
  ExteriorForm u(n, p, q);
  for (const auto& i : subsets(n, p))
    for (const auto& j : subsets(n, q)) u.add_term(i, j, complex_normal(rng));
  return u;
}

inline ExteriorForm random_real_form(std::mt19937_64& rng, int n, int p) {
  const int size = static_cast<int>(subsets(n, p).size());
  return form_from_coefficients(n, p, random_hermitian(rng, size));
}

inline ExteriorForm random_holomorphic(std::mt19937_64& rng, int n, int p) {
  const int size = static_cast<int>(subsets(n, p).size());
  Eigen::VectorXcd z(size);
  for (int i = 0; i < size; ++i) z(i) = complex_normal(rng);
  return holomorphic_form(n, p, z);
}

/// Sum of `terms` Hermitian squares of random (p,0)-forms.
inline ExteriorForm random_hermitian_positive(std::mt19937_64& rng, int n, int p, int terms) {
  ExteriorForm u(n, p, p);
  for (int t = 0; t < terms; ++t) u += hermitian_square(random_holomorphic(rng, n, p));
  return u;
}

/// Sum of `terms` Hermitian squares of random decomposable (p,0)-forms.
inline ExteriorForm random_strongly_positive(std::mt19937_64& rng, int n, int p, int terms) {
  ExteriorForm u(n, p, p);
  for (int t = 0; t < terms; ++t) {
    std::vector<Covector> f;
    for (int a = 0; a < p; ++a) {
      std::vector<Complex> c(static_cast<std::size_t>(n));
      for (auto& z : c) z = complex_normal(rng);
      f.emplace_back(c);
    }
    u += hermitian_square(decomposable(n, f));
  }
  return u;
}

inline Vector random_vector(std::mt19937_64& rng, int n) {
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (auto& z : c) z = complex_normal(rng);
  return Vector(c);
}

inline CurvaturePoint random_curvature(std::mt19937_64& rng, int n, int r) {
  return CurvaturePoint::from_coefficient_matrix(n, r, random_hermitian(rng, n * r));
}

/// Determinant by the Leibniz formula.
inline Complex leibniz_det(const std::vector<std::vector<Complex>>& m) {
  const std::size_t k = m.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) inversions += perm[a] > perm[b];
    Complex prod = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t a = 0; a < k; ++a) prod *= m[a][perm[a]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// (-i)^{p^2} u(w_1..w_p, conj w_1..conj w_p) from the definition: each term
/// c dz_I ^ dzbar_J is the determinant of its 2p covectors against the 2p
/// vectors, where dz_j(w) = w_j, dz_j(conj w) = 0, dzbar_j(w) = 0 and
/// dzbar_j(conj w) = conj(w_j).
inline double brute_force_pairing(const ExteriorForm& u, const std::vector<Vector>& w) {
  const int p = u.p();
  Complex total = 0.0;
  for (const auto& [key, c] : u.terms()) {
    const auto hol = key.hol.indices();
    const auto anti = key.antihol.indices();
    std::vector<std::vector<Complex>> m(2 * p, std::vector<Complex>(2 * p, 0.0));
    for (int a = 0; a < p; ++a) {
      for (int b = 0; b < p; ++b) {
        m[a][b] = w[b][hol[a] - 1];
        m[p + a][p + b] = std::conj(w[b][anti[a] - 1]);
      }
    }
    total += c * leibniz_det(m);
  }
  total *= i_pow(-static_cast<long>(p) * p);
  return total.real();
}

inline double rel_dev(const ExteriorForm& a, const ExteriorForm& b) {
  const double s = std::max({a.max_abs(), b.max_abs(), 1e-300});
  return (a - b).max_abs() / s;
}

}  // namespace testutil
