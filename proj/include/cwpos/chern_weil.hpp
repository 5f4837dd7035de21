#pragma once

// Pointwise Chern-Weil theory: Chern, Segre, Schur and generalized Schur
// forms of a curvature tensor, and the Griffiths biquadratic of the tensor.

#include <string>
#include <vector>

#include "cwpos/exterior_algebra.hpp"
#include "cwpos/search_budget.hpp"

namespace cwpos {

/// Curvature Theta(E,h) at one point, written in an h-orthonormal frame of E:
/// an r x r matrix of (1,1)-forms on C^n,
///     Theta_{ab} = sum_{j,k} theta_{ab,jk} e_j^v ^ conj(e_k^v).
/// Matrix indices a, b and coordinate indices j, k are 0-based in this API.
class CurvaturePoint {
 public:
  /// Zero curvature.
  CurvaturePoint(int n, int r);
  /// Entries in row-major order over (a, b). Throws on shape or bidegree errors;
  /// Hermitian symmetry is checked separately by validate().
  CurvaturePoint(int n, int r, std::vector<ExteriorForm> entries);

  int dim() const { return n_; }
  int rank() const { return r_; }
  const ExteriorForm& entry(int a, int b) const;
  void set_entry(int a, int b, ExteriorForm form);

  Complex coefficient(int a, int b, int j, int k) const;
  void add_coefficient(int a, int b, int j, int k, Complex value);

  /// The rn x rn matrix M_{(a,j),(b,k)} = theta_{ab,jk}; Hermitian iff Theta is.
  Eigen::MatrixXcd coefficient_matrix() const;
  static CurvaturePoint from_coefficient_matrix(int n, int r, const Eigen::MatrixXcd& m);

  CurvaturePoint& operator+=(const CurvaturePoint& other);
  CurvaturePoint& operator*=(double s);
  friend CurvaturePoint operator+(CurvaturePoint a, const CurvaturePoint& b) { return a += b; }
  friend CurvaturePoint operator*(double s, CurvaturePoint a) { return a *= s; }

 private:
  int n_;
  int r_;
  std::vector<ExteriorForm> entries_;
};

struct Violation {
  enum class Kind { Bidegree, Dimension, Hermitian };
  Kind kind;
  int alpha;  ///< 1-based row of the offending entry
  int beta;   ///< 1-based column
  double residual;
  std::string message() const;
};

/// Empty iff every entry is a (1,1)-form on C^n and conj(Theta_ab) == -Theta_ba
/// within `tol` (default: 1e-9 times the largest coefficient).
std::vector<Violation> validate(const CurvaturePoint& c, double tol);
std::vector<Violation> validate(const CurvaturePoint& c);

/// Chern forms c_0..c_r and Segre forms s_0..s_n of one curvature point.
/// Compute once and reuse for Schur forms.
class CharacteristicForms {
 public:
  explicit CharacteristicForms(const CurvaturePoint& c);

  int dim() const { return n_; }
  int rank() const { return r_; }
  /// c_k, the zero form (clamped bidegree) for k > r or k > n; throws for k < 0.
  const ExteriorForm& chern(int k) const;
  /// s_k for 0 <= k <= n.
  const ExteriorForm& segre(int k) const;
  /// c_total ^ s_total truncated at degree n, as graded pieces 0..n.
  std::vector<ExteriorForm> chern_times_segre() const;

 private:
  int n_;
  int r_;
  std::vector<ExteriorForm> chern_;
  std::vector<ExteriorForm> segre_;
  ExteriorForm chern_zero_;
};

/// c_k = sum over k-subsets S of det((i/2pi) Theta_S) (wedge determinant).
ExteriorForm chern_form(const CurvaturePoint& c, int k);
/// c_k as the trace of Lambda^k((i/2pi) Theta) acting on Lambda^k E, expanded on the
/// basis e_S of the exterior power. Independent of chern_form's determinant.
ExteriorForm chern_form_oracle(const CurvaturePoint& c, int k);
/// k-th graded piece of (1 + c_1 + ... + c_r)^{-1}, 0 <= k <= n.
ExteriorForm segre_form(const CurvaturePoint& c, int k);

/// S_sigma = det(c_{sigma_i + j - i}) for a partition sigma (any length,
/// trailing zeros allowed; parts larger than r give c = 0).
ExteriorForm schur_form(const CharacteristicForms& f, const std::vector<int>& sigma);
ExteriorForm schur_form(const CurvaturePoint& c, const std::vector<int>& sigma);

/// s_sigma = det(s_{sigma_i + j - i}) for any integer sequence, with s_l = 0 for l outside [0, n].
ExteriorForm generalized_schur_form(const CharacteristicForms& f, const std::vector<int>& sigma);
ExteriorForm generalized_schur_form(const CurvaturePoint& c, const std::vector<int>& sigma);

/// The 2x2-minor expansion of c_2:
/// -(1/4pi^2) sum_{a<b} (Theta_aa ^ Theta_bb - Theta_ab ^ Theta_ba).
ExteriorForm c2_minor_sum(const CurvaturePoint& c);

// --- Griffiths biquadratic ---------------------------------------------------

/// G(v, tau) = sum theta_{ab,jk} v_a conj(v_b) tau_j conj(tau_k), i.e.
/// <Theta v, v>(tau, conj tau) up to replacing v by conj(v). Real for valid Theta.
double griffiths_value(const CurvaturePoint& c, const Eigen::VectorXcd& v,
                       const Eigen::VectorXcd& tau);

struct GriffithsReport {
  enum class Certificate { SemipositiveUpTo, NegativeWitness, Inconclusive };
  double min_value = 0.0;
  Eigen::VectorXcd argmin_v;
  Eigen::VectorXcd argmin_tau;
  Certificate certified = Certificate::Inconclusive;
  double tol = 0.0;
};

/// Alternating minimal-eigenvector minimization of G over unit v and unit tau.
/// Refutation is sound (the witness re-evaluates below -tol); certification is
/// a search result. Throws InvalidArgument if validate(c) is not empty.
GriffithsReport griffiths_minimum(const CurvaturePoint& c, const SearchBudget& budget);

std::string to_string(GriffithsReport::Certificate cert);

}  // namespace cwpos
