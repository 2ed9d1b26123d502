#include "mbcs/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mbcs {

int sgn(double x) {
    if (x > 0.0) return 1;
    if (x < 0.0) return -1;
    return 0;
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    return dot(a.data(), b.data(), a.size());
}

double l1_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += std::abs(x);
    return acc;
}

double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

double linf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t.data[j * rows + i] = data[i * cols + j];
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data) m = std::max(m, std::abs(x));
    return m;
}

Instance Instance::create(Matrix features, std::vector<int> labels,
                          std::optional<std::vector<double>> ground_truth,
                          std::vector<std::size_t> corruptions,
                          std::uint64_t seed) {
    const std::size_t n = features.rows;
    const std::size_t p = features.cols;
    if (n == 0 || p == 0) throw std::invalid_argument("instance: empty dimensions");
    if (features.data.size() != n * p)
        throw std::invalid_argument("instance: feature buffer size mismatch");
    for (double x : features.data)
        if (!std::isfinite(x)) throw std::invalid_argument("instance: non-finite feature");
    if (labels.size() != n) throw std::invalid_argument("instance: label count mismatch");
    for (int y : labels)
        if (y != 1 && y != -1) throw std::invalid_argument("instance: label not in {-1,+1}");

    if (!std::is_sorted(corruptions.begin(), corruptions.end()))
        throw std::invalid_argument("instance: corruption indices not sorted");
    if (std::adjacent_find(corruptions.begin(), corruptions.end()) != corruptions.end())
        throw std::invalid_argument("instance: duplicate corruption index");
    if (!corruptions.empty() && corruptions.back() >= n)
        throw std::invalid_argument("instance: corruption index out of range");

    if (ground_truth) {
        if (ground_truth->size() != p)
            throw std::invalid_argument("instance: ground truth length mismatch");
        const double norm = l2_norm(*ground_truth);
        if (std::abs(norm - 1.0) > 1e-12)
            throw std::invalid_argument("instance: ground truth not unit norm");
        Instance probe;
        probe.corruptions_ = corruptions;
        for (std::size_t i = 0; i < n; ++i) {
            const double proj = dot(features.row(i), ground_truth->data(), p);
            const bool flipped = probe.is_corrupted(i);
            int expected = sgn(proj);
            if (expected == 0) expected = 1;  // generator breaks sign ties toward +1
            if (flipped) expected = -expected;
            if (labels[i] != expected)
                throw std::invalid_argument("instance: label inconsistent with ground truth at row " +
                                            std::to_string(i));
        }
    }

    Instance out;
    out.features_ = std::move(features);
    out.labels_ = std::move(labels);
    out.ground_truth_ = std::move(ground_truth);
    out.corruptions_ = std::move(corruptions);
    out.seed_ = seed;
    return out;
}

bool Instance::is_corrupted(std::size_t i) const {
    return std::binary_search(corruptions_.begin(), corruptions_.end(), i);
}

const char* estimator_name(EstimatorTag tag) {
    switch (tag) {
        case EstimatorTag::adaboost: return "adaboost";
        case EstimatorTag::lp: return "lp";
        case EstimatorTag::external: return "external";
    }
    return "external";
}

std::optional<EstimatorTag> estimator_from_name(std::string_view name) {
    if (name == "adaboost") return EstimatorTag::adaboost;
    if (name == "lp") return EstimatorTag::lp;
    if (name == "external") return EstimatorTag::external;
    return std::nullopt;
}

void validate_model(const Model& model, std::size_t p) {
    if (model.coefficients.size() != p)
        throw std::invalid_argument("model: coefficient length mismatch");
    for (double x : model.coefficients)
        if (!std::isfinite(x)) throw std::invalid_argument("model: non-finite coefficient");
    if (!(model.learning_rate > 0.0))
        throw std::invalid_argument("model: learning rate must be positive");
    const bool all_zero =
        std::all_of(model.coefficients.begin(), model.coefficients.end(),
                    [](double x) { return x == 0.0; });
    if (all_zero && model.estimator != EstimatorTag::external && !model.degenerate)
        throw std::invalid_argument("model: zero coefficients without degenerate flag");
}

double l1_margin(const Instance& instance, std::span<const double> beta) {
    if (beta.size() != instance.p()) throw std::invalid_argument("margin: dimension mismatch");
    const double norm = l1_norm(beta);
    if (norm == 0.0) throw std::domain_error("undefined margin");
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < instance.n(); ++i) {
        const double m = instance.labels()[i] * dot(instance.features().row(i), beta.data(), beta.size());
        worst = std::min(worst, m);
    }
    return worst / norm;
}

ExpLossResult exp_loss_detail(const Instance& instance, std::span<const double> beta) {
    if (beta.size() != instance.p()) throw std::invalid_argument("loss: dimension mismatch");
    ExpLossResult res;
    long double acc = 0.0L;
    for (std::size_t i = 0; i < instance.n(); ++i) {
        double e = -instance.labels()[i] * dot(instance.features().row(i), beta.data(), beta.size());
        if (e > 700.0) {
            e = 700.0;
            ++res.saturated;
        }
        acc += std::exp(static_cast<long double>(e));
    }
    res.value = static_cast<double>(acc / static_cast<long double>(instance.n()));
    return res;
}

double exp_loss(const Instance& instance, std::span<const double> beta) {
    return exp_loss_detail(instance, beta).value;
}

}  // namespace mbcs
