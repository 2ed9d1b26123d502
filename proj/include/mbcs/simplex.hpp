#pragma once

#include <cstdint>
#include <vector>

#include "mbcs/core.hpp"

// Dense revised dual simplex specialized to the minimum-l1
// interpolation program
//
//     min sum_j (bp_j + bm_j)
//     s.t. y_i <X_i, bp - bm> - t_i = 1,   bp, bm, t >= 0
//
// Variables are ordered [bp(p), bm(p), surplus(n)]. The all-surplus
// basis B = -I prices every column at its own nonnegative cost, so the
// start is dual feasible and no artificials or phase one are needed;
// the solver drives the negative basic values out row by row. The
// basis inverse is kept explicitly (n x n) with rank-1 pivot updates, a
// periodic full refactorization, and a final refactorization before
// the optimality verdict. Reduced costs are updated per pivot and
// rebuilt from the duals at every refactorization.

namespace mbcs {

struct SimplexResult {
    enum class Status {
        optimal,
        infeasible,        // a violated row with no negative entry (Farkas ray)
        iteration_limit,   // pivot cap hit; beta/lambda are the last iterate
        singular,          // basis refactorization failed
    };

    Status status = Status::optimal;
    std::vector<double> beta;    // p entries, bp - bm at the final basis
    std::vector<double> lambda;  // n duals of the margin rows
    double objective = 0.0;      // sum of basic bp/bm values
    std::uint64_t pivots = 0;
    std::uint64_t degenerate_pivots = 0;
    bool bland_activated = false;
};

struct SimplexOptions {
    double feasibility_tol = 1e-9;   // largest negative basic value tolerated at the end
    double optimality_tol = 1e-9;    // reduced-cost threshold
    double pivot_tol = 1e-9;         // smallest usable pivot element
    std::uint64_t degenerate_switch = 5000;  // zero-step pivots before Bland's rule
    std::uint64_t refactor_every = 512;
    std::uint64_t max_pivots = 0;    // 0 = derive from problem size
};

SimplexResult solve_margin_lp(const Matrix& features, const std::vector<int>& labels,
                              const SimplexOptions& options = {});

}  // namespace mbcs
