#pragma once

// Partitions, Schur and Segre polynomial identities, and push-forwards from
// flag bundles, all in exact integer arithmetic.
//
// Sign ledger (the only place these conventions are fixed):
//   - x_1..x_r are the Chern roots of E^v; a flag-bundle root xi_i maps to x_i.
//   - c_k(E) = e_k(-x) = (-1)^k e_k(x);  s_k(E) = h_k(x).
//   - the complete-flag push-forward divides by prod_{i<j} (x_j - x_i).
//   - (sigma_1, ..., sigma_r)^<- = (sigma_r, ..., sigma_1), applied once per monomial.
//   - on complete flags, a degree-(d_rho + k) monomial in the Xi classes equals
//     (-1)^{d_rho + k} times the same monomial in the xi variables.

#include <map>
#include <optional>
#include <vector>

#include "cwpos/sym_poly.hpp"

namespace cwpos {

using IntSequence = std::vector<int>;

bool is_partition(const IntSequence& s);
/// Sum of the entries.
int weight(const IntSequence& s);
/// Copy without trailing zeros.
IntSequence trim_zeros(IntSequence s);

/// Lambda(k, r): all length-k sequences with r >= s_1 >= ... >= s_k >= 0 and
/// weight k, in decreasing lexicographic order.
std::vector<IntSequence> enumerate_partitions(int k, int r);

/// sigma'_j = #{i : sigma_i >= j}, trailing zeros removed. Throws for non-partitions.
IntSequence conjugate_partition(const IntSequence& sigma);

/// Flag type 0 = rho_0 < rho_1 < ... < rho_m = r.
class FlagType {
 public:
  explicit FlagType(std::vector<int> rho);
  static FlagType complete(int r);

  const std::vector<int>& rho() const { return rho_; }
  int rank() const { return rho_.back(); }
  int length() const { return static_cast<int>(rho_.size()) - 1; }
  bool is_complete() const { return length() == rank(); }
  /// Fiber dimension d_rho = (r^2 - sum of squared block sizes) / 2.
  int relative_dimension() const;
  /// Root blocks (1-based indices) in increasing order; block j holds the roots
  /// i with r - rho_{m-j+1} < i <= r - rho_{m-j}.
  std::vector<std::vector<int>> root_blocks() const;

 private:
  std::vector<int> rho_;
};

/// S_sigma = det(c_{sigma_i + j - i}) in Chern variables, c_0 = 1 and c_l = 0
/// outside [0, r]. Accepts any partition (entries above r contribute c_l = 0).
SymPoly schur_in_chern(const IntSequence& sigma, int r);

/// s_sigma = det(s_{sigma_i + j - i}) in Segre variables, s_0 = 1, s_l = 0 for
/// l < 0 and, when n_max is given, for l > n_max.
SymPoly gschur_in_segre(const IntSequence& sigma, std::optional<int> n_max = std::nullopt);

/// s_k as a polynomial in c_1..c_r (series inversion, no truncation).
SymPoly segre_in_chern(int k, int r);
/// Rewrites a polynomial in Segre variables in Chern variables of rank r.
SymPoly segre_to_chern(const SymPoly& q, int r);

/// gschur_in_segre(sigma) == (-1)^{|sigma|} schur_in_chern(sigma', r), exactly.
bool jacobi_trudi_check(const IntSequence& sigma, int r);

/// The sequence nu of the push-forward rule.
IntSequence dp_nu(const FlagType& rho);

/// Push-forward of a polynomial in xi_1..xi_r along the flag bundle of type rho:
/// each monomial xi^lambda maps to s_{(lambda - nu)^<-}. Throws InvalidArgument
/// unless P is invariant under permutations inside every root block.
SymPoly dp_pushforward(const SymPoly& p, const FlagType& rho);

/// (-1)^{d_rho + k}; requires a complete flag and F_degree == d_rho + k.
int forms_sign_adjust(int f_degree, const FlagType& rho, int k);

/// sum_w sign(w) w(P) / prod_{i<j}(x_j - x_i) over w in S_r, as a polynomial in
/// the roots x. r <= 4. Throws InternalError on a non-exact division.
SymPoly complete_flag_oracle(const SymPoly& p, int r);

/// Substitutes c_k -> (-1)^k e_k(x) (zero for k > r) or s_k -> h_k(x_1..x_r).
SymPoly expand_in_roots(const SymPoly& q, int r);

/// Elementary and complete homogeneous symmetric polynomials in x_1..x_r.
SymPoly elementary_symmetric(int k, int r);
SymPoly complete_symmetric(int k, int r);

/// s_k: the push-forward of the distinguished root to the power r - 1 + k
/// along P(E) -> X, written as a Segre class.
SymPoly projective_oracle(int k, int r);

/// Coefficients of S_sigma * S_tau in the basis S_lambda, lambda in
/// Lambda(|sigma| + |tau|, r); keys have trailing zeros removed, zero
/// coefficients omitted. Throws InternalError if the system is inconsistent or
/// has a non-integral solution.
std::map<IntSequence, BigInt> schur_product_expand(const IntSequence& sigma, const IntSequence& tau, int r);

}  // namespace cwpos
