#include "mbcs/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mbcs {

namespace {

class MarginSimplex {
public:
    MarginSimplex(const Matrix& features, const std::vector<int>& labels,
                  const SimplexOptions& opt)
        : n_(features.rows), p_(features.cols), opt_(opt) {
        if (labels.size() != n_) throw std::invalid_argument("simplex: label count mismatch");
        // Two layouts of the same signed data. g_(i, j) = y_i * X(i, j)
        // feeds the row-direction passes (pivot rows, reduced-cost
        // refresh) as contiguous axpys; gt_(j, i) is its transpose for
        // O(n) single-column reads.
        g_ = Matrix(n_, p_);
        gt_ = Matrix(p_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const double yi = labels[i];
            const double* row = features.row(i);
            double* grow = g_.row(i);
            for (std::size_t j = 0; j < p_; ++j) {
                grow[j] = yi * row[j];
                gt_(j, i) = grow[j];
            }
        }
        n_vars_ = 2 * p_ + n_;
        max_pivots_ = opt_.max_pivots ? opt_.max_pivots
                                      : 10000 + 30 * static_cast<std::uint64_t>(n_) +
                                            2 * static_cast<std::uint64_t>(p_);
    }

    SimplexResult solve() {
        init_surplus_basis();
        run_dual();
        if (res_.status == SimplexResult::Status::optimal) settle();
        extract_solution();
        return res_;
    }

private:
    // Variable index layout: [beta+ (p), beta- (p), surplus (n)].
    void init_surplus_basis() {
        basis_.resize(n_);
        in_basis_.assign(n_vars_, 0);
        binv_.assign(n_ * n_, 0.0);
        xb_.assign(n_, -1.0);  // B = -I, b = 1
        for (std::size_t i = 0; i < n_; ++i) {
            basis_[i] = 2 * p_ + i;
            in_basis_[basis_[i]] = 1;
            binv_[i * n_ + i] = -1.0;
        }
        // The surplus basis prices every variable at its own cost, so the
        // start is dual feasible and phase one is unnecessary.
        rc_.assign(n_vars_, 0.0);
        for (std::size_t j = 0; j < 2 * p_; ++j) rc_[j] = 1.0;
        pivots_since_refactor_ = 0;
    }

    // lambda = c_B^T B^{-1}; only beta columns carry cost.
    void compute_lambda(std::vector<double>& lambda) const {
        lambda.assign(n_, 0.0);
        for (std::size_t r = 0; r < n_; ++r) {
            if (basis_[r] >= 2 * p_) continue;
            const double* row = binv_.data() + r * n_;
            for (std::size_t i = 0; i < n_; ++i) lambda[i] += row[i];
        }
    }

    // Constraint column of variable j in the original system.
    void raw_column(std::size_t j, std::vector<double>& col) const {
        col.assign(n_, 0.0);
        if (j < p_) {
            const double* g = gt_.row(j);
            for (std::size_t i = 0; i < n_; ++i) col[i] = g[i];
        } else if (j < 2 * p_) {
            const double* g = gt_.row(j - p_);
            for (std::size_t i = 0; i < n_; ++i) col[i] = -g[i];
        } else {
            col[j - 2 * p_] = -1.0;
        }
    }

    void ftran(const std::vector<double>& col, std::vector<double>& u) const {
        u.assign(n_, 0.0);
        for (std::size_t r = 0; r < n_; ++r) {
            const double* row = binv_.data() + r * n_;
            double acc = 0.0;
            for (std::size_t i = 0; i < n_; ++i) acc += row[i] * col[i];
            u[r] = acc;
        }
    }

    // out = sum_i scale_i * g_(i, :) accumulated over contiguous rows.
    void row_combination(const std::vector<double>& scale, std::vector<double>& out) const {
        out.assign(p_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const double s = scale[i];
            if (s == 0.0) continue;
            const double* grow = g_.row(i);
            for (std::size_t j = 0; j < p_; ++j) out[j] += s * grow[j];
        }
    }

    // Leaving row by steepest edge: the explicit inverse makes the exact
    // row norms affordable, and scale-free scores avoid the zigzag that a
    // most-negative rule produces here. Exact ties go to the lower basis
    // variable index (Bland mode: lowest basis variable index among all
    // violated rows). Returns n_ when primal feasible, i.e. optimal.
    std::size_t pick_row(bool bland) const {
        std::size_t best = n_;
        if (bland) {
            for (std::size_t r = 0; r < n_; ++r)
                if (xb_[r] < -opt_.feasibility_tol && (best == n_ || basis_[r] < basis_[best]))
                    best = r;
            return best;
        }
        double best_score = 0.0;
        for (std::size_t r = 0; r < n_; ++r) {
            if (xb_[r] >= -opt_.feasibility_tol) continue;
            const double* row = binv_.data() + r * n_;
            double norm2 = 0.0;
            for (std::size_t i = 0; i < n_; ++i) norm2 += row[i] * row[i];
            const double score = xb_[r] * xb_[r] / norm2;
            if (score > best_score ||
                (best != n_ && score == best_score && basis_[r] < basis_[best])) {
                best_score = score;
                best = r;
            }
        }
        return best;
    }

    // Dual ratio test on pivot row r. alpha_ holds the row of B^{-1}A
    // over the beta columns (beta- entries are its negation, surplus
    // entries are -rho). Eligible columns need a decidedly negative
    // entry; the winner keeps every reduced cost nonnegative. Ties go to
    // the larger pivot magnitude, then the lower variable index; Bland
    // mode goes to the lowest variable index outright. Returns n_vars_
    // when the row proves the primal infeasible.
    std::size_t pick_column(const std::vector<double>& rho, bool bland) {
        row_combination(rho, alpha_);
        const double ptol = opt_.pivot_tol;
        std::size_t best = n_vars_;
        double best_theta = std::numeric_limits<double>::infinity();
        double best_mag = 0.0;

        auto consider = [&](std::size_t j, double a) {
            if (a >= -ptol || in_basis_[j]) return;
            const double theta = std::max(rc_[j], 0.0) / -a;
            if (best == n_vars_) {
                best = j;
                best_theta = theta;
                best_mag = -a;
                return;
            }
            const double slack = 1e-12 * std::max(1.0, best_theta);
            if (bland) {
                // Strictly better ratios always win; ties keep the first
                // (lowest) index, since the scan order is increasing.
                if (theta < best_theta - slack) {
                    best = j;
                    best_theta = theta;
                    best_mag = -a;
                }
                return;
            }
            if (theta < best_theta - slack || (theta <= best_theta + slack && -a > best_mag)) {
                best = j;
                best_theta = std::min(theta, best_theta);
                best_mag = -a;
            }
        };

        for (std::size_t j = 0; j < p_; ++j) consider(j, alpha_[j]);
        for (std::size_t j = 0; j < p_; ++j) consider(p_ + j, -alpha_[j]);
        for (std::size_t i = 0; i < n_; ++i) consider(2 * p_ + i, -rho[i]);
        return best;
    }

    double alpha_of(std::size_t j, const std::vector<double>& rho) const {
        if (j < p_) return alpha_[j];
        if (j < 2 * p_) return -alpha_[j - p_];
        return -rho[j - 2 * p_];
    }

    // One dual step of the reduced costs: rc_j += theta * alpha_rj for
    // every nonbasic column, the leaving variable picks up theta, the
    // entering one drops to zero.
    void update_costs(double theta, const std::vector<double>& rho, std::size_t leave_var,
                      std::size_t enter) {
        if (theta != 0.0) {
            for (std::size_t j = 0; j < p_; ++j) {
                rc_[j] += theta * alpha_[j];
                rc_[p_ + j] -= theta * alpha_[j];
            }
            for (std::size_t i = 0; i < n_; ++i) rc_[2 * p_ + i] -= theta * rho[i];
        }
        rc_[leave_var] = theta;
        rc_[enter] = 0.0;
    }

    void pivot(std::size_t leave_row, std::size_t enter, const std::vector<double>& u) {
        const double piv = u[leave_row];
        double* prow = binv_.data() + leave_row * n_;
        for (std::size_t i = 0; i < n_; ++i) prow[i] /= piv;
        xb_[leave_row] /= piv;
        for (std::size_t r = 0; r < n_; ++r) {
            if (r == leave_row) continue;
            const double f = u[r];
            if (f == 0.0) continue;
            double* row = binv_.data() + r * n_;
            for (std::size_t i = 0; i < n_; ++i) row[i] -= f * prow[i];
            xb_[r] -= f * xb_[leave_row];
        }
        in_basis_[basis_[leave_row]] = 0;
        basis_[leave_row] = enter;
        in_basis_[enter] = 1;
    }

    // Rebuild binv_ and xb_ from scratch by Gauss-Jordan with partial
    // pivoting on the current basis matrix, then recompute the reduced
    // costs from the fresh duals, clamping roundoff just below zero.
    // Returns false on a singular basis.
    bool refactor() {
        std::vector<double> m(n_ * n_, 0.0);
        std::vector<double> col;
        for (std::size_t k = 0; k < n_; ++k) {
            raw_column(basis_[k], col);
            for (std::size_t i = 0; i < n_; ++i) m[i * n_ + k] = col[i];
        }
        std::vector<double> inv(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) inv[i * n_ + i] = 1.0;
        for (std::size_t c = 0; c < n_; ++c) {
            std::size_t piv_row = c;
            double piv_val = std::abs(m[c * n_ + c]);
            for (std::size_t r = c + 1; r < n_; ++r) {
                const double v = std::abs(m[r * n_ + c]);
                if (v > piv_val) {
                    piv_val = v;
                    piv_row = r;
                }
            }
            if (piv_val < 1e-12) return false;
            if (piv_row != c) {
                for (std::size_t k = 0; k < n_; ++k) {
                    std::swap(m[piv_row * n_ + k], m[c * n_ + k]);
                    std::swap(inv[piv_row * n_ + k], inv[c * n_ + k]);
                }
            }
            const double piv = m[c * n_ + c];
            for (std::size_t k = 0; k < n_; ++k) {
                m[c * n_ + k] /= piv;
                inv[c * n_ + k] /= piv;
            }
            for (std::size_t r = 0; r < n_; ++r) {
                if (r == c) continue;
                const double f = m[r * n_ + c];
                if (f == 0.0) continue;
                for (std::size_t k = 0; k < n_; ++k) {
                    m[r * n_ + k] -= f * m[c * n_ + k];
                    inv[r * n_ + k] -= f * inv[c * n_ + k];
                }
            }
        }
        binv_ = std::move(inv);
        for (std::size_t r = 0; r < n_; ++r) {
            const double* row = binv_.data() + r * n_;
            double acc = 0.0;
            for (std::size_t i = 0; i < n_; ++i) acc += row[i];
            xb_[r] = acc;
        }
        refresh_costs();
        pivots_since_refactor_ = 0;
        return true;
    }

    void refresh_costs() {
        compute_lambda(lambda_);
        row_combination(lambda_, d_);
        for (std::size_t j = 0; j < p_; ++j) {
            rc_[j] = std::max(1.0 - d_[j], 0.0);
            rc_[p_ + j] = std::max(1.0 + d_[j], 0.0);
        }
        for (std::size_t i = 0; i < n_; ++i) rc_[2 * p_ + i] = std::max(lambda_[i], 0.0);
    }

    void run_dual() {
        std::vector<double> rho(n_), col, u;
        bool just_refreshed = false;
        while (true) {
            if (res_.pivots >= max_pivots_) {
                res_.status = SimplexResult::Status::iteration_limit;
                return;
            }
            const bool bland = res_.degenerate_pivots >= opt_.degenerate_switch;
            if (bland) res_.bland_activated = true;

            const std::size_t leave_row = pick_row(bland);
            if (leave_row == n_) return;  // primal feasible, hence optimal

            const double* brow = binv_.data() + leave_row * n_;
            std::copy(brow, brow + n_, rho.begin());
            const std::size_t enter = pick_column(rho, bland);
            if (enter == n_vars_) {
                // A violated row with no negative entry is a Farkas
                // certificate: the constraints have no solution.
                res_.status = SimplexResult::Status::infeasible;
                return;
            }

            raw_column(enter, col);
            ftran(col, u);
            if (std::abs(u[leave_row]) <= opt_.pivot_tol) {
                // The updated inverse and the fresh column disagree on
                // the pivot element; refactor once and retry the row.
                if (just_refreshed) {
                    res_.status = SimplexResult::Status::singular;
                    return;
                }
                if (!refactor()) {
                    res_.status = SimplexResult::Status::singular;
                    return;
                }
                just_refreshed = true;
                continue;
            }
            just_refreshed = false;

            const double theta = std::max(rc_[enter], 0.0) / -alpha_of(enter, rho);
            if (theta < 1e-12) ++res_.degenerate_pivots;
            update_costs(theta, rho, basis_[leave_row], enter);
            pivot(leave_row, enter, u);
            ++res_.pivots;
            ++pivots_since_refactor_;
            if (pivots_since_refactor_ >= opt_.refactor_every) {
                if (!refactor()) {
                    res_.status = SimplexResult::Status::singular;
                    return;
                }
                just_refreshed = true;
            }
        }
    }

    // The eta updates drift, so certify the finish line on a freshly
    // factorized basis and resume pivoting if the clean residuals still
    // leave a violated row.
    void settle() {
        for (int round = 0; round < 4; ++round) {
            if (pivots_since_refactor_ == 0 && round > 0) return;
            if (!refactor()) {
                res_.status = SimplexResult::Status::singular;
                return;
            }
            if (pick_row(false) == n_) return;
            run_dual();
            if (res_.status != SimplexResult::Status::optimal) return;
        }
        res_.status = SimplexResult::Status::iteration_limit;
    }

    void extract_solution() {
        res_.beta.assign(p_, 0.0);
        res_.objective = 0.0;
        for (std::size_t r = 0; r < n_; ++r) {
            const std::size_t v = basis_[r];
            const double val = std::max(xb_[r], 0.0);
            if (v < p_) {
                res_.beta[v] += val;
                res_.objective += val;
            } else if (v < 2 * p_) {
                res_.beta[v - p_] -= val;
                res_.objective += val;
            }
        }
        compute_lambda(lambda_);
        res_.lambda = lambda_;
    }

    std::size_t n_, p_;
    SimplexOptions opt_;
    Matrix g_;
    Matrix gt_;
    std::size_t n_vars_ = 0;
    std::uint64_t max_pivots_ = 0;
    std::uint64_t pivots_since_refactor_ = 0;

    std::vector<std::size_t> basis_;
    std::vector<char> in_basis_;
    std::vector<double> binv_;
    std::vector<double> xb_;
    std::vector<double> rc_;
    std::vector<double> alpha_;
    std::vector<double> lambda_;
    std::vector<double> d_;

    SimplexResult res_;
};

}  // namespace

SimplexResult solve_margin_lp(const Matrix& features, const std::vector<int>& labels,
                              const SimplexOptions& options) {
    if (features.rows == 0 || features.cols == 0)
        throw std::invalid_argument("simplex: empty problem");
    MarginSimplex solver(features, labels, options);
    return solver.solve();
}

}  // namespace mbcs
