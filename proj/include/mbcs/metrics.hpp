#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mbcs/core.hpp"
#include "mbcs/datagen.hpp"
#include "mbcs/rng.hpp"

// Evaluation quantities: prediction error (closed form for Gaussian
// features, Monte Carlo otherwise), direction error, margins, and the
// empirical small-ball diagnostic. All metrics are invariant under
// positive rescaling of the model.

namespace mbcs {

enum class PredictionErrorMethod { closed_form_gaussian, monte_carlo, none };

const char* prediction_error_method_name(PredictionErrorMethod method);

struct MetricsRecord {
    EstimatorTag estimator = EstimatorTag::external;
    double prediction_error = 0.0;  // NaN without ground truth
    PredictionErrorMethod prediction_error_method = PredictionErrorMethod::none;
    std::uint64_t mc_samples = 0;      // monte_carlo only
    double mc_std_error = 0.0;         // monte_carlo only
    double l2_direction_error = 0.0;   // NaN without ground truth
    double margin = 0.0;
    std::optional<double> margin_ratio;
    double loss = 0.0;
    std::uint64_t wall_time_ms = 0;
};

/// Misclassification probability of a fresh Gaussian feature vector:
/// arccos(<beta/||beta||_2, beta_star>)/pi, inner product clamped to
/// [-1, 1]. Exact only for rotation-invariant features. Throws
/// std::domain_error on a zero model.
double prediction_error_gaussian(std::span<const double> beta,
                                 std::span<const double> ground_truth);

struct McError {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t ties = 0;  // draws where either projection was exactly zero
};

/// Share of m fresh draws X with sgn<X, beta> != sgn<X, beta_star>,
/// using the three-valued sgn, so an exact-zero projection on either
/// side counts as a mismatch unless both are zero.
McError prediction_error_mc(std::span<const double> beta, std::span<const double> ground_truth,
                            const FeatureDistribution& distribution, bool standardize_laplace,
                            std::uint64_t m, RandomStream& stream);

/// || beta/||beta||_2 - beta_star ||_2, in [0, 2].
double l2_direction_error(std::span<const double> beta, std::span<const double> ground_truth);

/// For each epsilon in the grid, the fraction of feature rows with
/// |<X_i, direction>| <= epsilon. Estimates the small-ball probability
/// along one direction. Epsilons must lie in [0, 1]; the direction must
/// be unit l2.
std::vector<double> empirical_small_ball(const Matrix& features,
                                         std::span<const double> direction,
                                         std::span<const double> eps_grid);

struct EvalOptions {
    // Selects the prediction-error path: closed form when gaussian,
    // Monte Carlo otherwise; no distribution means no prediction error.
    std::optional<FeatureDistribution> distribution;
    bool standardize_laplace = false;
    std::uint64_t mc_samples = 100000;
    std::optional<double> gamma;  // enables margin_ratio
    std::uint64_t eval_seed = 0;
};

/// Fills a MetricsRecord for one fitted model. Throws std::domain_error
/// on an all-zero model; callers record those as failures rather than
/// metric rows. wall_time_ms is left zero; timing is the caller's
/// concern (and off by default, to keep artifacts byte-reproducible).
MetricsRecord evaluate_model(const Instance& instance, const Model& model,
                             const EvalOptions& options);

}  // namespace mbcs
