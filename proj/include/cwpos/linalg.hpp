#pragma once

// Small dense helpers shared by the numeric modules.

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "cwpos/exterior_algebra.hpp"

namespace cwpos {

struct MinEigenpair {
  double value = 0.0;
  Eigen::VectorXcd vector;
};

/// Smallest eigenvalue of a Hermitian matrix and a unit eigenvector for it.
/// Only the lower triangle is read.
MinEigenpair min_eigenpair(const Eigen::MatrixXcd& h);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Eigen::MatrixXcd& h);

/// Largest absolute eigenvalue of a Hermitian matrix.
double spectral_norm(const Eigen::MatrixXcd& h);

/// SplitMix64 step; used to derive independent seeds from (seed, index).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
Complex complex_normal(std::mt19937_64& rng);

/// Uniformly distributed unit vector in C^n.
Eigen::VectorXcd random_unit_vector(std::mt19937_64& rng, int n);

/// Hermitian part (A + A^*) / 2.
Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& a);

}  // namespace cwpos
