#include "mbcs/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mbcs {

namespace {

constexpr std::uint64_t kCacheRefreshPeriod = 512;

// Rebuilds margins and the l1 norm from scratch.
void refresh_cache(BoostState& state, const Matrix& rescaled, const std::vector<int>& labels) {
    const std::size_t n = rescaled.rows;
    const std::size_t p = rescaled.cols;
    for (std::size_t i = 0; i < n; ++i)
        state.margins[i] = -labels[i] * dot(rescaled.row(i), state.beta.data(), p);
    state.beta_l1 = l1_norm(state.beta);
}

// (1/n) sum exp(m_i) with the same clamping contract as exp_loss.
double loss_from_margins(BoostState& state) {
    long double acc = 0.0L;
    for (double m : state.margins) {
        if (m > 700.0) {
            m = 700.0;
            ++state.loss_saturations;
        }
        acc += std::exp(static_cast<long double>(m));
    }
    return static_cast<double>(acc / static_cast<long double>(state.margins.size()));
}

}  // namespace

void BoostConfig::validate() const {
    if (!(learning_rate > 0.0) || !(learning_rate < 1.0))
        throw std::invalid_argument("boost config: learning rate must lie in (0, 1)");
    if (record_every == 0)
        throw std::invalid_argument("boost config: record_every must be positive");
    if (!(weight_floor >= 0.0))
        throw std::invalid_argument("boost config: weight floor must be nonnegative");
}

std::pair<Matrix, double> rescale_features(const Matrix& features) {
    const double scale = features.max_abs();
    if (scale == 0.0) throw std::invalid_argument("rescale: all-zero feature matrix");
    Matrix out = features;
    for (double& x : out.data) x /= scale;
    return {std::move(out), scale};
}

TrajectoryRecord boost_step(BoostState& state, const Matrix& rescaled,
                            const Matrix& rescaled_t, const std::vector<int>& labels,
                            const BoostConfig& config) {
    const std::size_t n = rescaled.rows;
    const std::size_t p = rescaled.cols;
    ++state.t;

    // Softmax weights over the cached margins.
    double mmax = -std::numeric_limits<double>::infinity();
    for (const double m : state.margins) mmax = std::max(mmax, m);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = std::max(std::exp(state.margins[i] - mmax), config.weight_floor);
        state.weights[i] = w;
        wsum += w;
    }
    if (!std::isfinite(wsum) || wsum <= 0.0)
        throw BoostNumericalError("boost: weight normalizer is not finite", state.t);

    // rescaled_t (p x n) holds plain transposed features; fold y and the
    // normalization into the weights once so the column scan is a dot.
    for (std::size_t i = 0; i < n; ++i) state.weights[i] *= labels[i] / wsum;

    std::size_t coord = 0;
    double best_abs = -1.0;
    double alpha = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double c = dot(rescaled_t.row(j), state.weights.data(), n);
        const double a = std::abs(c);
        if (a > best_abs) {
            best_abs = a;
            coord = j;
            alpha = c;
        }
    }

    const double step = config.learning_rate * alpha;
    const double old_coef = state.beta[coord];
    state.beta[coord] += step;
    state.beta_l1 += std::abs(state.beta[coord]) - std::abs(old_coef);

    if (step != 0.0) {
        const double* col = rescaled_t.row(coord);
        for (std::size_t i = 0; i < n; ++i) state.margins[i] -= labels[i] * col[i] * step;
    }
    if (state.t % kCacheRefreshPeriod == 0) refresh_cache(state, rescaled, labels);

    TrajectoryRecord rec;
    rec.t = state.t;
    rec.coordinate = coord;
    rec.direction_sign = sgn(alpha);
    rec.alpha = alpha;
    rec.loss = loss_from_margins(state);
    if (state.beta_l1 > 0.0) {
        double worst = std::numeric_limits<double>::infinity();
        for (const double m : state.margins) worst = std::min(worst, -m);
        rec.margin = worst / state.beta_l1;
    } else {
        rec.margin = std::numeric_limits<double>::quiet_NaN();
    }
    return rec;
}

std::pair<Model, Trajectory> run_adaboost(const Instance& instance, const BoostConfig& config) {
    config.validate();
    auto [rescaled, scale] = rescale_features(instance.features());
    const Matrix rescaled_t = rescaled.transposed();
    const std::vector<int>& labels = instance.labels();

    BoostState state;
    state.beta.assign(instance.p(), 0.0);
    state.margins.assign(instance.n(), 0.0);
    state.weights.assign(instance.n(), 0.0);
    state.scale = scale;

    Trajectory traj;
    traj.total_iterations = config.max_iterations;
    for (std::uint64_t t = 1; t <= config.max_iterations; ++t) {
        TrajectoryRecord rec = boost_step(state, rescaled, rescaled_t, labels, config);
        if (rec.alpha == 0.0) ++traj.stalls;
        if (t % config.record_every == 0 || t == config.max_iterations)
            traj.records.push_back(rec);
    }

    Model model;
    model.coefficients = std::move(state.beta);
    model.estimator = EstimatorTag::adaboost;
    model.iterations = config.max_iterations;
    model.learning_rate = config.learning_rate;
    model.feature_scale = scale;
    model.degenerate = std::all_of(model.coefficients.begin(), model.coefficients.end(),
                                   [](double x) { return x == 0.0; });
    return {std::move(model), std::move(traj)};
}

std::uint64_t iterations_rule(std::uint64_t n, std::uint64_t s, std::uint64_t n_corrupt,
                              std::uint64_t p, double epsilon) {
    if (n == 0 || s == 0 || p == 0)
        throw std::invalid_argument("iterations rule: n, s, p must be positive");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("iterations rule: epsilon must lie in (0, 1]");
    const double base = static_cast<double>(n) *
                        std::sqrt(static_cast<double>(s) + static_cast<double>(n_corrupt));
    const double value = std::pow(base, 2.0 / 3.0) * std::log(static_cast<double>(p)) /
                         (epsilon * epsilon);
    return static_cast<std::uint64_t>(std::ceil(value));
}

}  // namespace mbcs
