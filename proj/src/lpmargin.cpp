#include "mbcs/lpmargin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mbcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Normalizes the raw simplex duals onto the probability simplex.
// Returns false when they are too negative or too small to normalize.
bool normalize_duals(std::vector<double>& lambda) {
    double sum = 0.0;
    for (double& l : lambda) {
        if (l < -1e-7) return false;
        l = std::max(l, 0.0);
        sum += l;
    }
    if (sum < 1e-12) return false;
    for (double& l : lambda) l /= sum;
    return true;
}

}  // namespace

const char* lp_status_name(LpSolution::Status status) {
    switch (status) {
        case LpSolution::Status::optimal: return "optimal";
        case LpSolution::Status::infeasible: return "infeasible";
        case LpSolution::Status::numerically_degenerate: return "numerically_degenerate";
    }
    return "numerically_degenerate";
}

LpSolution solve_max_margin(const Instance& instance, const SimplexOptions& options) {
    SimplexResult raw = solve_margin_lp(instance.features(), instance.labels(), options);

    LpSolution sol;
    sol.pivots = raw.pivots;
    sol.bland_activated = raw.bland_activated;

    if (raw.status == SimplexResult::Status::infeasible) {
        sol.status = LpSolution::Status::infeasible;
        sol.beta_hat.assign(instance.p(), 0.0);
        sol.margin = kNaN;
        sol.duality_gap = kNaN;
        return sol;
    }

    sol.beta_hat = std::move(raw.beta);
    const double norm1 = l1_norm(sol.beta_hat);

    // Best-known values from the final iterate, whatever the status.
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < instance.n(); ++i)
        worst = std::min(worst, instance.labels()[i] *
                                    dot(instance.features().row(i), sol.beta_hat.data(),
                                        instance.p()));
    sol.margin = norm1 > 0.0 ? worst / norm1 : kNaN;

    std::vector<double> weights = std::move(raw.lambda);
    const bool duals_ok = normalize_duals(weights);
    if (duals_ok) {
        sol.dual_weights = std::move(weights);
        sol.duality_gap = std::isnan(sol.margin)
                              ? kNaN
                              : std::abs(dual_value(instance, sol.dual_weights) - sol.margin);
    } else {
        sol.duality_gap = kNaN;
    }

    // `optimal` only when the full certificate holds: primal feasibility,
    // an active constraint (margin * ||beta||_1 = 1), and a matching
    // dual bound. Anything less is numerically degenerate.
    const bool simplex_ok = raw.status == SimplexResult::Status::optimal;
    const bool primal_ok = norm1 > 0.0 && worst >= 1.0 - 1e-8;
    const bool active_ok = norm1 > 0.0 && std::abs(sol.margin * norm1 - 1.0) <= 1e-8;
    const bool gap_ok = duals_ok && !std::isnan(sol.duality_gap) &&
                        sol.duality_gap <= 1e-6 * std::max(1.0, sol.margin);
    sol.status = (simplex_ok && primal_ok && active_ok && gap_ok)
                     ? LpSolution::Status::optimal
                     : LpSolution::Status::numerically_degenerate;
    return sol;
}

double dual_value(const Instance& instance, std::span<const double> weights) {
    if (weights.size() != instance.n())
        throw std::domain_error("dual value: weight count mismatch");
    double sum = 0.0;
    for (const double w : weights) {
        if (w < -1e-8) throw std::domain_error("dual value: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-8) throw std::domain_error("dual value: weights must sum to 1");

    std::vector<double> combo(instance.p(), 0.0);
    for (std::size_t i = 0; i < instance.n(); ++i) {
        const double wy = weights[i] * instance.labels()[i];
        if (wy == 0.0) continue;
        const double* row = instance.features().row(i);
        for (std::size_t j = 0; j < instance.p(); ++j) combo[j] += wy * row[j];
    }
    return linf_norm(combo);
}

double margin_of_best(const Instance& instance, const Model& model) {
    const LpSolution sol = solve_max_margin(instance);
    if (sol.status != LpSolution::Status::optimal)
        throw std::domain_error("margin ratio: no certified margin for this instance");
    return margin_ratio(instance, model.coefficients, sol.margin);
}

double margin_ratio(const Instance& instance, std::span<const double> beta, double gamma) {
    if (!(gamma > 0.0)) throw std::domain_error("margin ratio: margin must be positive");
    return l1_margin(instance, beta) / gamma;
}

}  // namespace mbcs
