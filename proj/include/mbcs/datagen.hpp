#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mbcs/core.hpp"
#include "mbcs/rng.hpp"

// Synthetic instance generation: i.i.d. features from one of five
// distributions, a sparse random ground-truth direction, sign labels,
// and uniformly chosen label corruptions. Everything is a deterministic
// function of the spec, including its master seed.

namespace mbcs {

struct FeatureDistribution {
    enum class Kind { gaussian, student_t, uniform, laplace, rademacher };

    Kind kind = Kind::gaussian;
    std::uint64_t dof = 0;  // student_t only, must be >= 3

    static FeatureDistribution gaussian() { return {Kind::gaussian, 0}; }
    static FeatureDistribution student_t(std::uint64_t dof) { return {Kind::student_t, dof}; }
    static FeatureDistribution uniform() { return {Kind::uniform, 0}; }
    static FeatureDistribution laplace() { return {Kind::laplace, 0}; }
    static FeatureDistribution rademacher() { return {Kind::rademacher, 0}; }

    bool operator==(const FeatureDistribution&) const = default;
};

/// CLI / plan-file spelling: gaussian, student-t, uniform, laplace,
/// rademacher. The student-t token omits the dof, which is chosen per
/// instance dimension (see student_dof) unless overridden.
const char* distribution_name(FeatureDistribution::Kind kind);
std::optional<FeatureDistribution::Kind> distribution_from_name(std::string_view name);

struct GenSpec {
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t s = 0;
    std::size_t n_corrupt = 0;
    FeatureDistribution distribution;
    std::uint64_t master_seed = 0;
    bool standardize_laplace = false;  // scale 1/sqrt(2) for unit variance
};

/// Throws std::invalid_argument describing the first violated field.
void validate_spec(const GenSpec& spec);

/// Degrees of freedom used for student-t features at dimension p:
/// max(3, round(ln p)).
std::uint64_t student_dof(std::size_t p);

/// Draws one variate. Exposed so metrics and tests can sample fresh
/// feature vectors without building a full GenSpec.
double sample_one(const FeatureDistribution& distribution, bool standardize_laplace,
                  RandomStream& stream);

/// n x p matrix of i.i.d. entries, filled row-major from the stream.
Matrix sample_features(const GenSpec& spec, RandomStream& stream);

/// s-sparse direction: support uniform over s-subsets of [0, p), each
/// nonzero entry an independent +-1/sqrt(s). Unit l2 norm by
/// construction.
std::vector<double> sample_sparse_rademacher(std::size_t p, std::size_t s, RandomStream& stream);

/// k distinct sample indices, uniform over k-subsets of [0, n), sorted.
std::vector<std::size_t> sample_corruptions(std::size_t n, std::size_t k, RandomStream& stream);

struct LabelResult {
    std::vector<int> labels;
    std::size_t ties = 0;  // rows with an exact-zero projection
};

/// Labels sgn<X_i, beta*>, flipped on the corruption set. A zero
/// projection would make the sign vanish; those rows get +1 before the
/// flip and are counted in `ties`.
LabelResult generate_labels(const Matrix& features, const std::vector<double>& ground_truth,
                            const std::vector<std::size_t>& corruptions);

struct GenResult {
    Instance instance;
    std::size_t label_ties = 0;
};

/// Composes the samplers above. Feature, ground-truth, and corruption
/// streams are derived independently from the master seed, so changing
/// n_corrupt does not disturb the features.
GenResult generate_instance_detail(const GenSpec& spec);
Instance generate_instance(const GenSpec& spec);

}  // namespace mbcs
