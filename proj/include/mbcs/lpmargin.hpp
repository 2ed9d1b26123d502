#pragma once

#include <span>
#include <vector>

#include "mbcs/core.hpp"
#include "mbcs/simplex.hpp"

// Exact max-l1-margin computation. The primal program
//
//     min ||beta||_1  s.t.  y_i <X_i, beta> >= 1
//
// has optimal value 1/gamma, where gamma is the best achievable
// l1-margin; its dual weights w live on the simplex and satisfy
// gamma = ||sum_i w_i y_i X_i||_inf with no duality gap. solve_max_margin
// returns both sides and checks them against each other, so an
// `optimal` status is a verified certificate, not a solver claim.

namespace mbcs {

struct LpSolution {
    enum class Status { optimal, infeasible, numerically_degenerate };

    std::vector<double> beta_hat;      // p entries; zeros when infeasible
    double margin = 0.0;               // gamma; NaN when undefined
    std::vector<double> dual_weights;  // n entries, nonnegative, sum 1; empty when infeasible
    Status status = Status::optimal;
    double duality_gap = 0.0;          // | dual_value(w) - gamma |; NaN when undefined

    std::uint64_t pivots = 0;
    bool bland_activated = false;
};

const char* lp_status_name(LpSolution::Status status);

/// Solves the margin LP. `infeasible` means the labels are not linearly
/// separable (a first-class outcome, reachable with Rademacher
/// features). `numerically_degenerate` carries the last iterate as a
/// best-known bound. Either way, no throw.
LpSolution solve_max_margin(const Instance& instance, const SimplexOptions& options = {});

/// ||sum_i weights_i y_i X_i||_inf; upper-bounds gamma for every simplex
/// weights vector by weak duality. Throws std::domain_error when the
/// weights leave the simplex by more than 1e-8.
double dual_value(const Instance& instance, std::span<const double> weights);

/// l1_margin(model) / gamma, both on the original features. Throws
/// std::domain_error when the LP did not certify an optimum or gamma
/// is not positive.
double margin_of_best(const Instance& instance, const Model& model);

/// Same ratio when gamma is already known.
double margin_ratio(const Instance& instance, std::span<const double> beta, double gamma);

}  // namespace mbcs
