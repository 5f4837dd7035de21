#pragma once

// Complex exterior algebra on a fixed C^n, evaluated at a single point.
//
// A form of bidegree (p,q) is stored as a sparse map
//     (I, J) -> c   meaning   c * e_I^v ^ conj(e_J^v)
// with every holomorphic factor written before every antiholomorphic one:
//     e_I^v ^ conj(e_J^v) = e_{i1}^v ^ ... ^ e_{ip}^v ^ conj(e_{j1}^v) ^ ... ^ conj(e_{jq}^v).
// Conjugation maps c at (I,J) to (-1)^{pq} conj(c) at (J,I); this makes
// i e_1^v ^ conj(e_1^v) real and is used consistently by every module.

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cwpos {

using Complex = std::complex<double>;

inline constexpr int kMaxDimension = 30;

/// Strictly increasing multi-index with entries in [1, n], stored as a bit set
/// (bit j-1 set <=> j is an entry).
class MultiIndex {
 public:
  MultiIndex() = default;
  /// Throws InvalidArgument unless `indices` is strictly increasing and positive.
  MultiIndex(std::initializer_list<int> indices);
  explicit MultiIndex(const std::vector<int>& indices);

  static MultiIndex from_mask(std::uint32_t mask) {
    MultiIndex m;
    m.mask_ = mask;
    return m;
  }
  static MultiIndex full(int n) { return from_mask(n >= 32 ? ~0u : ((1u << n) - 1u)); }

  std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool contains(int j) const { return (mask_ >> (j - 1)) & 1u; }
  /// Largest entry, 0 for the empty index.
  int max_entry() const { return mask_ == 0 ? 0 : 32 - std::countl_zero(mask_); }
  std::vector<int> indices() const;
  std::string to_string() const;

  auto operator<=>(const MultiIndex&) const = default;

 private:
  std::uint32_t mask_ = 0;
};

/// All size-k multi-indices in [1, n], in increasing lexicographic order of entries.
std::vector<MultiIndex> subsets(int n, int k);

/// Sign of the permutation sorting the concatenation (I, K) into increasing order;
/// 0 when I and K share an entry.
int merge_sign(MultiIndex i, MultiIndex k);

template <class Tag>
struct ComplexTuple {
  std::vector<Complex> components;

  ComplexTuple() = default;
  explicit ComplexTuple(std::vector<Complex> c) : components(std::move(c)) {}
  ComplexTuple(std::initializer_list<Complex> c) : components(c) {}

  static ComplexTuple basis(int n, int j) {
    ComplexTuple t;
    t.components.assign(static_cast<std::size_t>(n), Complex{});
    t.components[static_cast<std::size_t>(j - 1)] = 1.0;
    return t;
  }

  int dim() const { return static_cast<int>(components.size()); }
  Complex operator[](int j) const { return components[static_cast<std::size_t>(j)]; }
  Complex& operator[](int j) { return components[static_cast<std::size_t>(j)]; }
  bool operator==(const ComplexTuple&) const = default;
};

/// Element of V^v = (C^n)^v, coefficients against e_1^v, ..., e_n^v.
using Covector = ComplexTuple<struct CovectorTag>;
/// Element of V = C^n, coefficients against e_1, ..., e_n.
using Vector = ComplexTuple<struct VectorTag>;

class ExteriorForm {
 public:
  struct Key {
    MultiIndex hol;
    MultiIndex antihol;
    auto operator<=>(const Key&) const = default;
  };
  using Terms = std::map<Key, Complex>;

  /// The zero form of bidegree (p,q) on C^n.
  ExteriorForm(int n, int p, int q);

  static ExteriorForm scalar(int n, Complex value);
  static ExteriorForm monomial(int n, MultiIndex hol, MultiIndex antihol, Complex c = 1.0);
  /// (1,0)-form sum_j c_j e_j^v.
  static ExteriorForm one_form(const Covector& c);
  /// (0,1)-form sum_j c_j conj(e_j^v).
  static ExteriorForm antiholomorphic_one_form(const Covector& c);

  int dim() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Complex coefficient(MultiIndex hol, MultiIndex antihol) const;
  double max_abs() const;

  /// Adds c to the coefficient at (hol, antihol); exact zeros are pruned.
  void add_term(MultiIndex hol, MultiIndex antihol, Complex c);

  ExteriorForm& operator+=(const ExteriorForm& other);
  ExteriorForm& operator-=(const ExteriorForm& other);
  ExteriorForm& operator*=(Complex s);
  friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) { return a += b; }
  friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) { return a -= b; }
  friend ExteriorForm operator*(Complex s, ExteriorForm a) { return a *= s; }
  friend ExteriorForm operator*(ExteriorForm a, Complex s) { return a *= s; }
  ExteriorForm operator-() const { return (*this) * Complex(-1.0); }

  /// Exact coefficient-wise equality.
  bool operator==(const ExteriorForm&) const = default;

  std::string to_string() const;

 private:
  void require_compatible(const ExteriorForm& other) const;
  int n_;
  int p_;
  int q_;
  Terms terms_;
};

/// Result of a wedge product; `annihilated` is set when the bidegree of the
/// product would exceed n, in which case `form` is the zero form with the
/// bidegree clamped to n.
struct WedgeResult {
  ExteriorForm form;
  bool annihilated = false;
};

WedgeResult try_wedge(const ExteriorForm& u, const ExteriorForm& v);
/// Exterior product; throws DimensionMismatch if u and v live on different spaces.
ExteriorForm wedge(const ExteriorForm& u, const ExteriorForm& v);
ExteriorForm wedge_power(const ExteriorForm& u, int k);

ExteriorForm conjugate(const ExteriorForm& u);

/// Absolute tolerance used by is_real and Hermitian-symmetry checks when the
/// caller does not pass one: 1e-9 times the largest coefficient magnitude, plus
/// 1e-12 so that forms made of rounding noise (a Schur form that vanishes
/// identically, say) are not rejected as non-real.
double default_tolerance(const ExteriorForm& u);

bool is_real(const ExteriorForm& u, double tol);
bool is_real(const ExteriorForm& u);

/// The real tau with v = tau * (i e_1^v ^ conj(e_1^v)) ^ ... ^ (i e_n^v ^ conj(e_n^v)).
double volume_coefficient(const ExteriorForm& v, double tol);
double volume_coefficient(const ExteriorForm& v);

/// (-i)^{p^2} u(w_1, ..., w_p, conj(w_1), ..., conj(w_p)) for a real (p,p)-form u.
double evaluate_pairing(const ExteriorForm& u, const std::vector<Vector>& w);

/// Volume coefficient of the pull-back of u to span(S), in the basis S.
double restrict_volume(const ExteriorForm& u, const std::vector<Vector>& s);

/// beta_1 ^ ... ^ beta_k as a (k,0)-form.
ExteriorForm decomposable(int n, const std::vector<Covector>& factors);

/// Hermitian form (beta, eta) -> u ^ i^{q^2} beta ^ conj(eta) on Lambda^{q,0},
/// q = n - p, in the basis e_I^v of size-q multi-indices.
struct HermitianGram {
  std::vector<MultiIndex> basis;
  Eigen::MatrixXcd matrix;
};
HermitianGram hermitian_gram(const ExteriorForm& u);

/// Coefficient matrix A of a (p,p)-form, u = i^{p^2} sum_{I,J} A_{IJ} e_I^v ^ conj(e_J^v).
/// A is Hermitian iff u is real.
struct CoefficientMatrix {
  std::vector<MultiIndex> basis;
  Eigen::MatrixXcd matrix;
};
CoefficientMatrix coefficient_matrix(const ExteriorForm& u);
ExteriorForm form_from_coefficients(int n, int p, const Eigen::MatrixXcd& a);

/// (p,0)-form sum_I z_I e_I^v for z indexed by subsets(n, p).
ExteriorForm holomorphic_form(int n, int p, const Eigen::VectorXcd& z);

/// i^{p^2} xi ^ conj(xi) for a (p,0)-form xi.
ExteriorForm hermitian_square(const ExteriorForm& xi);

/// i^k for integer k (exact for the four values).
Complex i_pow(long k);

}  // namespace cwpos
