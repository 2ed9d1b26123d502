#include "mbcs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mbcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_nonzero(std::span<const double> beta, const char* who) {
    for (const double x : beta)
        if (x != 0.0) return;
    throw std::domain_error(std::string(who) + ": zero model");
}

void require_unit(std::span<const double> v, const char* who) {
    if (std::abs(l2_norm(v) - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(who) + ": direction must be unit norm");
}

}  // namespace

const char* prediction_error_method_name(PredictionErrorMethod method) {
    switch (method) {
        case PredictionErrorMethod::closed_form_gaussian: return "closed_form_gaussian";
        case PredictionErrorMethod::monte_carlo: return "monte_carlo";
        case PredictionErrorMethod::none: return "none";
    }
    return "none";
}

double prediction_error_gaussian(std::span<const double> beta,
                                 std::span<const double> ground_truth) {
    if (beta.size() != ground_truth.size())
        throw std::invalid_argument("prediction error: dimension mismatch");
    require_nonzero(beta, "prediction error");
    require_unit(ground_truth, "prediction error");
    const double cosine =
        std::clamp(dot(beta, ground_truth) / l2_norm(beta), -1.0, 1.0);
    return std::acos(cosine) / std::numbers::pi;
}

McError prediction_error_mc(std::span<const double> beta, std::span<const double> ground_truth,
                            const FeatureDistribution& distribution, bool standardize_laplace,
                            std::uint64_t m, RandomStream& stream) {
    if (beta.size() != ground_truth.size())
        throw std::invalid_argument("prediction error: dimension mismatch");
    require_nonzero(beta, "prediction error");
    require_unit(ground_truth, "prediction error");
    if (m == 0) throw std::invalid_argument("prediction error: sample count must be positive");

    const std::size_t p = beta.size();
    McError res;
    std::uint64_t mismatches = 0;
    for (std::uint64_t k = 0; k < m; ++k) {
        double proj_model = 0.0;
        double proj_truth = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double x = sample_one(distribution, standardize_laplace, stream);
            proj_model += x * beta[j];
            proj_truth += x * ground_truth[j];
        }
        const int sm = sgn(proj_model);
        const int st = sgn(proj_truth);
        if (sm == 0 || st == 0) ++res.ties;
        if (sm != st) ++mismatches;
    }
    res.estimate = static_cast<double>(mismatches) / static_cast<double>(m);
    res.std_error = std::sqrt(res.estimate * (1.0 - res.estimate) / static_cast<double>(m));
    return res;
}

double l2_direction_error(std::span<const double> beta, std::span<const double> ground_truth) {
    if (beta.size() != ground_truth.size())
        throw std::invalid_argument("direction error: dimension mismatch");
    require_nonzero(beta, "direction error");
    require_unit(ground_truth, "direction error");
    const double norm = l2_norm(beta);
    double acc = 0.0;
    for (std::size_t j = 0; j < beta.size(); ++j) {
        const double d = beta[j] / norm - ground_truth[j];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::vector<double> empirical_small_ball(const Matrix& features,
                                         std::span<const double> direction,
                                         std::span<const double> eps_grid) {
    if (direction.size() != features.cols)
        throw std::invalid_argument("small ball: dimension mismatch");
    require_unit(direction, "small ball");
    for (const double eps : eps_grid)
        if (!(eps >= 0.0) || eps > 1.0)
            throw std::invalid_argument("small ball: epsilon must lie in [0, 1]");

    std::vector<double> projections(features.rows);
    for (std::size_t i = 0; i < features.rows; ++i)
        projections[i] = std::abs(dot(features.row(i), direction.data(), direction.size()));

    std::vector<double> out(eps_grid.size(), 0.0);
    for (std::size_t k = 0; k < eps_grid.size(); ++k) {
        std::size_t count = 0;
        for (const double a : projections)
            if (a <= eps_grid[k]) ++count;
        out[k] = static_cast<double>(count) / static_cast<double>(features.rows);
    }
    return out;
}

MetricsRecord evaluate_model(const Instance& instance, const Model& model,
                             const EvalOptions& options) {
    if (model.coefficients.size() != instance.p())
        throw std::invalid_argument("evaluate: dimension mismatch");
    require_nonzero(model.coefficients, "evaluate");

    MetricsRecord rec;
    rec.estimator = model.estimator;
    rec.margin = l1_margin(instance, model.coefficients);
    rec.loss = exp_loss(instance, model.coefficients);
    if (options.gamma && *options.gamma > 0.0) rec.margin_ratio = rec.margin / *options.gamma;

    if (instance.ground_truth()) {
        const auto& truth = *instance.ground_truth();
        rec.l2_direction_error = l2_direction_error(model.coefficients, truth);
        if (options.distribution &&
            options.distribution->kind == FeatureDistribution::Kind::gaussian) {
            rec.prediction_error = prediction_error_gaussian(model.coefficients, truth);
            rec.prediction_error_method = PredictionErrorMethod::closed_form_gaussian;
        } else if (options.distribution) {
            RandomStream stream =
                derive_stream(options.eval_seed, StreamPurpose::evaluation);
            const McError mc =
                prediction_error_mc(model.coefficients, truth, *options.distribution,
                                    options.standardize_laplace, options.mc_samples, stream);
            rec.prediction_error = mc.estimate;
            rec.prediction_error_method = PredictionErrorMethod::monte_carlo;
            rec.mc_samples = options.mc_samples;
            rec.mc_std_error = mc.std_error;
        } else {
            rec.prediction_error = kNaN;
        }
    } else {
        rec.prediction_error = kNaN;
        rec.l2_direction_error = kNaN;
    }
    return rec;
}

}  // namespace mbcs
