#pragma once

// Curvature tensors with known Griffiths positivity (positive controls),
// perturbations of them, and planted negative controls.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cwpos/chern_weil.hpp"

namespace cwpos {

struct GeneratorSpec {
  enum class Kind { DualNakano, LineSum, PsdTensor, ConvexMix, Indefinite };
  int n = 3;
  int r = 3;
  Kind kind = Kind::DualNakano;
  /// Inner dimension of A for DualNakano.
  int m = 1;
  std::uint64_t seed = 0;
  double scale = 1.0;

  /// Throws InvalidArgument unless n, r, m >= 1 and scale > 0.
  void validate() const;
  bool positive_control() const { return kind != Kind::Indefinite; }
};

std::string to_string(GeneratorSpec::Kind kind);
GeneratorSpec::Kind parse_generator_kind(const std::string& name);

/// i sum_{j,k} h_{jk} e_j^v ^ conj(e_k^v); real iff h is Hermitian.
ExteriorForm hermitian_one_one(const Eigen::MatrixXcd& h);
/// omega = i sum_j e_j^v ^ conj(e_j^v).
ExteriorForm standard_kahler_form(int n);
/// The Hermitian matrix h of a real (1,1)-form omega = i sum h_jk e_j^v ^ conj(e_k^v).
Eigen::MatrixXcd one_one_matrix(const ExteriorForm& omega);
/// i (B B^* / n + I / 4) for a complex Gaussian B: strictly positive.
ExteriorForm random_kahler_form(int n, std::mt19937_64& rng);

/// Theta = A ^ conj(A)^t for an r x m matrix of (1,0)-forms
/// A_{a,l} = sum_j a[(a*m + l)*n + j] e_j^v (0-based a, l, j).
CurvaturePoint dual_nakano(int n, int r, int m, const std::vector<Complex>& a);
/// dual_nakano with independent standard complex Gaussian coefficients times spec.scale.
CurvaturePoint dual_nakano_sample(const GeneratorSpec& spec);

/// Diagonal Theta_{aa} = -i omega_a; each omega_a must be strictly positive.
CurvaturePoint line_sum(int n, const std::vector<ExteriorForm>& omegas);
/// Theta_{ab} = -i P_{ab} omega for omega >= 0 and Hermitian P >= 0.
CurvaturePoint psd_tensor(const ExteriorForm& omega, const Eigen::MatrixXcd& p);
/// Theta - i eps omega Id, i.e. i Theta + eps omega (x) Id.
CurvaturePoint epsilon_perturb(const CurvaturePoint& c, const ExteriorForm& omega, double eps);
/// sum_s weights[s] * cs[s]; weights must be nonnegative.
CurvaturePoint convex_combine(const std::vector<CurvaturePoint>& cs, const std::vector<double>& weights);
/// A dual-Nakano sample with -s (sum_j e_j^v ^ conj(e_j^v)) added to Theta_11,
/// s = (largest eigenvalue of the theta_11 block) + 1, so G(e_1, tau) <= -1 on unit tau.
CurvaturePoint indefinite_control(int n, int r, std::uint64_t seed);

/// Dispatches on spec.kind.
CurvaturePoint sample(const GeneratorSpec& spec);

/// Positive-control spec number `index` of a battery: cycles through dual
/// Nakano, line sum, psd tensor and convex mixes, with parameters drawn from `seed`.
GeneratorSpec positive_control_spec(std::size_t index, int n, int r, std::uint64_t seed);

}  // namespace cwpos
