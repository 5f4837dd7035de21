#pragma once

#include <cstdint>

namespace cwpos {

/// Multi-start budget for the heuristic minimizations (Griffiths biquadratic,
/// weak positivity). Start s draws its random initial point from
/// split_seed(rng_seed, s), so results do not depend on evaluation order.
struct SearchBudget {
  int random_starts = 64;
  int local_iters = 200;
  double tol = 1e-9;
  std::uint64_t rng_seed = 0;

  /// Throws InvalidArgument unless starts, iterations and tol are positive.
  void validate() const;
};

}  // namespace cwpos
