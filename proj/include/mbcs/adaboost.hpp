#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "mbcs/core.hpp"

// Coordinate-descent AdaBoost on the exponential loss with the
// quadratic adaptive stepsize, over canonical-basis weak learners.
// Features are rescaled by their largest absolute entry on entry, so
// every stepsize satisfies |alpha_t| <= 1; coefficients are reported in
// that rescaled coordinate system with the scale recorded on the Model.
// Margins, margin ratios, and prediction error are invariant to the
// rescaling, so nothing downstream converts back.

namespace mbcs {

struct BoostConfig {
    double learning_rate = 0.2;      // epsilon, in (0, 1)
    std::uint64_t max_iterations = 0;  // hard cap, no early stopping
    std::uint64_t record_every = 1;    // trajectory thinning
    double weight_floor = 0.0;         // optional per-sample weight floor

    void validate() const;
};

class BoostNumericalError : public std::runtime_error {
public:
    BoostNumericalError(const std::string& what, std::uint64_t iteration)
        : std::runtime_error(what), iteration_(iteration) {}
    std::uint64_t iteration() const { return iteration_; }

private:
    std::uint64_t iteration_;
};

/// Divides the features by the max absolute entry of the whole matrix.
/// Returns the rescaled matrix and that scale. Throws
/// std::invalid_argument on an all-zero matrix.
std::pair<Matrix, double> rescale_features(const Matrix& features);

// Mutable iteration state over rescaled features. `margins` caches
// m_i = -y_i <X_i, beta>; weights are the softmax of that vector. The
// cache is advanced by one rank-1 update per step and rebuilt from
// scratch every 512 iterations to bound drift.
struct BoostState {
    std::vector<double> beta;     // p, rescaled coordinate system
    std::vector<double> margins;  // n, cached m_i
    std::vector<double> weights;  // n, scratch reused across steps
    double beta_l1 = 0.0;         // cached ||beta||_1
    std::uint64_t t = 0;
    double scale = 1.0;
    std::size_t loss_saturations = 0;
};

/// One iteration: softmax weights from cached margins (max-subtracted),
/// coordinate with the largest absolute weighted correlation (lowest
/// index on ties), signed stepsize, coefficient update, incremental
/// cache update. The returned record carries the loss and rescaled-
/// feature margin after the step.
TrajectoryRecord boost_step(BoostState& state, const Matrix& rescaled,
                            const Matrix& rescaled_t, const std::vector<int>& labels,
                            const BoostConfig& config);

/// Runs max_iterations steps on the instance. The Trajectory keeps
/// every record_every-th record plus the final one.
std::pair<Model, Trajectory> run_adaboost(const Instance& instance, const BoostConfig& config);

/// Iteration budget (n sqrt(s + n_corrupt))^(2/3) * ln(p) / epsilon^2,
/// rounded up. epsilon must lie in (0, 1].
std::uint64_t iterations_rule(std::uint64_t n, std::uint64_t s, std::uint64_t n_corrupt,
                              std::uint64_t p, double epsilon);

}  // namespace mbcs
