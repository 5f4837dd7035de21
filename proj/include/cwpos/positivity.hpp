#pragma once

// Membership tests for the cones of real (p,p)-forms
//     strongly positive  ⊆  Hermitian positive  ⊆  positive (weakly positive).
//
// - check_positive: search over p-dimensional subspaces (sound refutation,
//   heuristic certification).
// - check_hermitian_positive: eigenvalues of the Hermitian form
//   (beta, eta) -> u ^ i^{q^2} beta ^ conj(eta); exact up to floating point.
// - check_strongly_positive: nonnegative least squares over decomposable
//   atoms i^{p^2} alpha ^ conj(alpha) for certification; a Hermitian-positive
//   (q,q)-form with negative pairing for refutation.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cwpos/exterior_algebra.hpp"
#include "cwpos/search_budget.hpp"

namespace cwpos {

/// A decomposable (p,0)-form alpha = beta_1 ^ ... ^ beta_p; as a cone generator
/// it stands for i^{p^2} alpha ^ conj(alpha).
struct DecomposableAtom {
  std::vector<Covector> factors;
};

ExteriorForm atom_form(int n, const DecomposableAtom& atom);

/// Witness of weak-positivity failure: (-i)^{p^2} u(w, conj w) < 0.
struct PairingWitness {
  std::vector<Vector> tuple;
};
/// Witness of Hermitian-positivity failure: a (q,0)-form beta with
/// volume_coefficient(u ^ i^{q^2} beta ^ conj(beta)) < 0.
struct HermitianWitness {
  ExteriorForm beta;
};
/// Strong-positivity certificate: u ≈ sum_s weights[s] * atom_form(atoms[s]).
struct StrongCertificate {
  std::vector<DecomposableAtom> atoms;
  std::vector<double> weights;
  double residual = 0.0;
};
/// Hermitian-positive (q,q)-form v with volume_coefficient(u ^ v) < 0,
/// refuting strong positivity by duality.
struct DualWitness {
  ExteriorForm v;
};
/// Minimizing subspace of a certified weak-positivity search.
struct SearchRecord {
  std::vector<Vector> argmin;
};

using VerdictPayload =
    std::variant<std::monostate, PairingWitness, HermitianWitness, StrongCertificate, DualWitness, SearchRecord>;

struct PositivityVerdict {
  enum class Status { Certified, Refuted, Unknown };
  Status status = Status::Unknown;
  /// Minimum found (weak), minimum eigenvalue (Hermitian), or relative NNLS
  /// residual / dual pairing (strong).
  double margin = 0.0;
  /// True when Certified rests on a finite search rather than a certificate.
  bool heuristic = false;
  VerdictPayload payload;
  double tol = 0.0;
};

std::string to_string(PositivityVerdict::Status status);

/// Weak positivity. Minimizes (-i)^{p^2} u(w, conj w) over orthonormal p-tuples
/// (i.e. the volume coefficient of u restricted to a p-dimensional subspace in a
/// unitary basis) by multi-start block-coordinate descent; each coordinate step
/// is a minimal-eigenvector problem. Refuted iff the minimum found is < -tol;
/// on refutation the tuple is the witness. Throws NotReal for non-real u.
PositivityVerdict check_positive(const ExteriorForm& u, const SearchBudget& budget);

/// Hermitian positivity: Certified iff the minimum eigenvalue of
/// hermitian_gram(u) is >= -tol * max(||gram||, 1).
PositivityVerdict check_hermitian_positive(const ExteriorForm& u, double tol = 1e-9);

struct StrongSearchOptions {
  /// Random atoms per real dimension of Lambda^{p,p}_R.
  int atoms_per_dimension = 20;
  /// Relative residual accepted as a certificate.
  double residual_tol = 1e-8;
  /// Extra atoms tried before the random dictionary (e.g. products of factors
  /// of known certificates).
  std::vector<DecomposableAtom> seed_atoms;
};

PositivityVerdict check_strongly_positive(const ExteriorForm& u, const SearchBudget& budget,
                                          const StrongSearchOptions& options = {});

/// Re-evaluates a Refuted verdict's witness against u from scratch; returns the
/// witnessed value, which is < -tol for every genuine refutation.
double replay_witness(const ExteriorForm& u, const PositivityVerdict& verdict);

/// Certificate of a wedge product from certificates of the factors
/// (pairwise wedges of the atoms, product weights).
StrongCertificate wedge_certificates(const StrongCertificate& a, const StrongCertificate& b);

/// Decomposability test for a (p,0)-form: returns factors beta_1..beta_p with
/// beta_1 ^ ... ^ beta_p == xi when xi is decomposable (within tol), nothing otherwise.
std::optional<std::vector<Covector>> factor_decomposable(const ExteriorForm& xi, double tol = 1e-9);

/// Lawson-Hanson nonnegative least squares: argmin ||A x - b||, x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iter = 0);

}  // namespace cwpos
