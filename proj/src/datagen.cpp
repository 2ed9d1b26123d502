#include "mbcs/datagen.hpp"

#include <cmath>
#include <stdexcept>

namespace mbcs {

const char* distribution_name(FeatureDistribution::Kind kind) {
    switch (kind) {
        case FeatureDistribution::Kind::gaussian: return "gaussian";
        case FeatureDistribution::Kind::student_t: return "student-t";
        case FeatureDistribution::Kind::uniform: return "uniform";
        case FeatureDistribution::Kind::laplace: return "laplace";
        case FeatureDistribution::Kind::rademacher: return "rademacher";
    }
    return "gaussian";
}

std::optional<FeatureDistribution::Kind> distribution_from_name(std::string_view name) {
    using Kind = FeatureDistribution::Kind;
    if (name == "gaussian") return Kind::gaussian;
    if (name == "student-t") return Kind::student_t;
    if (name == "uniform") return Kind::uniform;
    if (name == "laplace") return Kind::laplace;
    if (name == "rademacher") return Kind::rademacher;
    return std::nullopt;
}

void validate_spec(const GenSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("gen spec: n must be positive");
    if (spec.p == 0) throw std::invalid_argument("gen spec: p must be positive");
    if (spec.s == 0 || spec.s > spec.p)
        throw std::invalid_argument("gen spec: s must be in [1, p]");
    if (spec.n_corrupt > spec.n)
        throw std::invalid_argument("gen spec: n_corrupt exceeds n");
    if (spec.distribution.kind == FeatureDistribution::Kind::student_t &&
        spec.distribution.dof < 3)
        throw std::invalid_argument("gen spec: student-t dof must be at least 3");
}

std::uint64_t student_dof(std::size_t p) {
    if (p < 2) throw std::invalid_argument("student_dof: p must be at least 2");
    const double d = std::round(std::log(static_cast<double>(p)));
    return d < 3.0 ? 3 : static_cast<std::uint64_t>(d);
}

double sample_one(const FeatureDistribution& distribution, bool standardize_laplace,
                  RandomStream& stream) {
    static const double kSqrt3 = std::sqrt(3.0);
    switch (distribution.kind) {
        case FeatureDistribution::Kind::gaussian:
            return stream.gaussian();
        case FeatureDistribution::Kind::student_t:
            return stream.student_t_unit(distribution.dof);
        case FeatureDistribution::Kind::uniform:
            return stream.uniform(-kSqrt3, kSqrt3);
        case FeatureDistribution::Kind::laplace: {
            const double x = stream.laplace();
            return standardize_laplace ? x / std::sqrt(2.0) : x;
        }
        case FeatureDistribution::Kind::rademacher:
            return static_cast<double>(stream.rademacher());
    }
    throw std::logic_error("sample_one: unknown distribution");
}

Matrix sample_features(const GenSpec& spec, RandomStream& stream) {
    validate_spec(spec);
    Matrix out(spec.n, spec.p);
    for (double& x : out.data)
        x = sample_one(spec.distribution, spec.standardize_laplace, stream);
    return out;
}

std::vector<double> sample_sparse_rademacher(std::size_t p, std::size_t s, RandomStream& stream) {
    if (s == 0 || s > p) throw std::invalid_argument("sparse ground truth: s must be in [1, p]");
    const auto support = stream.sample_without_replacement(p, s);
    const double mag = 1.0 / std::sqrt(static_cast<double>(s));
    std::vector<double> beta(p, 0.0);
    for (const std::uint64_t j : support) beta[j] = stream.rademacher() * mag;
    return beta;
}

std::vector<std::size_t> sample_corruptions(std::size_t n, std::size_t k, RandomStream& stream) {
    if (k > n) throw std::invalid_argument("corruptions: k exceeds n");
    const auto picked = stream.sample_without_replacement(n, k);
    return {picked.begin(), picked.end()};
}

LabelResult generate_labels(const Matrix& features, const std::vector<double>& ground_truth,
                            const std::vector<std::size_t>& corruptions) {
    if (ground_truth.size() != features.cols)
        throw std::invalid_argument("labels: ground truth length mismatch");
    LabelResult res;
    res.labels.resize(features.rows);
    auto corrupted = corruptions.begin();
    for (std::size_t i = 0; i < features.rows; ++i) {
        const double proj = dot(features.row(i), ground_truth.data(), features.cols);
        int y = sgn(proj);
        if (y == 0) {
            y = 1;
            ++res.ties;
        }
        while (corrupted != corruptions.end() && *corrupted < i) ++corrupted;
        if (corrupted != corruptions.end() && *corrupted == i) y = -y;
        res.labels[i] = y;
    }
    return res;
}

GenResult generate_instance_detail(const GenSpec& spec) {
    validate_spec(spec);

    RandomStream feature_stream = derive_stream(spec.master_seed, StreamPurpose::features);
    Matrix features = sample_features(spec, feature_stream);

    RandomStream truth_stream = derive_stream(spec.master_seed, StreamPurpose::ground_truth);
    std::vector<double> beta_star = sample_sparse_rademacher(spec.p, spec.s, truth_stream);

    RandomStream corruption_stream = derive_stream(spec.master_seed, StreamPurpose::corruptions);
    std::vector<std::size_t> corruptions =
        sample_corruptions(spec.n, spec.n_corrupt, corruption_stream);

    LabelResult labels = generate_labels(features, beta_star, corruptions);

    GenResult out{Instance::create(std::move(features), std::move(labels.labels),
                                   std::move(beta_star), std::move(corruptions),
                                   spec.master_seed),
                  labels.ties};
    return out;
}

Instance generate_instance(const GenSpec& spec) {
    return generate_instance_detail(spec).instance;
}

}  // namespace mbcs
