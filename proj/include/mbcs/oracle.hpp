#pragma once

#include <span>

#include "mbcs/core.hpp"

// Brute-force references for tests. Deliberately slow and independent
// of the production solver code paths.

namespace mbcs {

/// Grid search for the max l1-margin in R^2: walks grid_count points
/// uniformly along the four edges of the l1 unit sphere (the diamond
/// through (1,0),(0,1),(-1,0),(0,-1)) and returns the best worst-case
/// margin found. Always a lower bound on the true maximum, converging
/// at rate O(1/grid_count). Throws std::invalid_argument unless p == 2
/// and grid_count >= 1000.
double brute_force_margin(const Instance& instance, std::size_t grid_count);

/// True iff sgn<X_i, beta> == y_i for every sample, with the
/// three-valued sgn (a zero projection never matches).
bool exhaustive_sign_check(const Instance& instance, std::span<const double> beta);

}  // namespace mbcs
