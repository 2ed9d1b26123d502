#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

// Core domain types and the margin/loss formulas shared by every other
// module. All types are immutable after construction and safe to share
// across threads; the free functions are pure.

namespace mbcs {

/// Sign function: 1 for x > 0, -1 for x < 0, 0 for x == 0.
int sgn(double x);

double dot(const double* a, const double* b, std::size_t n);
double dot(std::span<const double> a, std::span<const double> b);
double l1_norm(std::span<const double> v);
double l2_norm(std::span<const double> v);
double linf_norm(std::span<const double> v);

// Dense row-major matrix. Samples are rows, so the per-sample passes
// stream contiguously; column passes go through transposed().
// Deliberately minimal: this is not a linear-algebra API.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }

    const double* row(std::size_t i) const { return data.data() + i * cols; }
    double* row(std::size_t i) { return data.data() + i * cols; }
    std::span<const double> row_span(std::size_t i) const { return {row(i), cols}; }

    /// Row-major copy with rows and columns swapped, so former columns
    /// become contiguous rows.
    Matrix transposed() const;

    double max_abs() const;

    bool operator==(const Matrix&) const = default;
};

// One synthetic one-bit classification problem: features X (n x p),
// labels y in {-1,+1}, optionally the unit ground-truth direction and
// the set of corrupted (label-flipped) sample indices.
class Instance {
public:
    // Validates every invariant and throws std::invalid_argument on the
    // first violation. Where the ground truth is present, labels must
    // match sgn<X_i, beta*> (flipped on corrupted indices); rows whose
    // projection is exactly zero are exempt from the sign check and must
    // carry +1 (-1 if corrupted), matching the generator's tie rule.
    static Instance create(Matrix features, std::vector<int> labels,
                           std::optional<std::vector<double>> ground_truth,
                           std::vector<std::size_t> corruptions,
                           std::uint64_t seed);

    std::size_t n() const { return features_.rows; }
    std::size_t p() const { return features_.cols; }
    const Matrix& features() const { return features_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::optional<std::vector<double>>& ground_truth() const { return ground_truth_; }
    const std::vector<std::size_t>& corruptions() const { return corruptions_; }
    std::uint64_t seed() const { return seed_; }

    bool is_corrupted(std::size_t i) const;

    bool operator==(const Instance&) const = default;

private:
    Instance() = default;

    Matrix features_;
    std::vector<int> labels_;
    std::optional<std::vector<double>> ground_truth_;
    std::vector<std::size_t> corruptions_;  // sorted, unique, < n
    std::uint64_t seed_ = 0;
};

enum class EstimatorTag { adaboost, lp, external };

const char* estimator_name(EstimatorTag tag);
std::optional<EstimatorTag> estimator_from_name(std::string_view name);

// A fitted coefficient vector plus provenance. `feature_scale` records
// the max-abs-entry rescaling applied to the features during fitting
// (1.0 when none); margins and prediction error are invariant to it.
struct Model {
    std::vector<double> coefficients;
    EstimatorTag estimator = EstimatorTag::external;
    std::uint64_t iterations = 0;
    double learning_rate = 1.0;
    double feature_scale = 1.0;
    bool degenerate = false;  // all-zero coefficients; margin undefined
};

/// Throws std::invalid_argument unless the model is consistent with an
/// instance of dimension p (length match, positive learning rate, and
/// non-zero coefficients unless external or flagged degenerate).
void validate_model(const Model& model, std::size_t p);

struct TrajectoryRecord {
    std::uint64_t t = 0;           // 1-based iteration index
    std::size_t coordinate = 0;    // selected column j_t
    int direction_sign = 0;        // sgn(alpha_t)
    double alpha = 0.0;            // signed adaptive stepsize
    double loss = 0.0;             // exponential loss of beta after the step
    double margin = 0.0;           // l1-margin on the rescaled features; NaN while beta == 0
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    std::uint64_t total_iterations = 0;
    std::uint64_t stalls = 0;  // iterations with alpha_t == 0
};

/// min_i y_i <X_i, beta> / ||beta||_1. Negative when beta fails to
/// interpolate. Throws std::domain_error("undefined margin") on an
/// all-zero beta.
double l1_margin(const Instance& instance, std::span<const double> beta);

struct ExpLossResult {
    double value = 1.0;
    std::size_t saturated = 0;  // samples whose exponent hit the clamp
};

// (1/n) sum_i exp(-y_i <X_i, beta>). Exponents are clamped at 700 so
// adversarial inputs saturate instead of overflowing; large-negative
// exponents underflow to zero harmlessly.
ExpLossResult exp_loss_detail(const Instance& instance, std::span<const double> beta);
double exp_loss(const Instance& instance, std::span<const double> beta);

}  // namespace mbcs
