#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "mbcs/core.hpp"
#include "mbcs/datagen.hpp"
#include "mbcs/rng.hpp"

using namespace mbcs;

namespace {

GenSpec base_spec(FeatureDistribution dist, std::size_t n, std::size_t p, std::size_t s,
                  std::size_t k, std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.p = p;
    spec.s = s;
    spec.n_corrupt = k;
    spec.distribution = dist;
    spec.master_seed = seed;
    return spec;
}

struct Moments {
    double mean = 0.0;
    double var = 0.0;
};

Moments sample_moments(const FeatureDistribution& dist, bool standardize, std::size_t m,
                       std::uint64_t seed) {
    RandomStream stream = derive_stream(seed, StreamPurpose::features);
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = sample_one(dist, standardize, stream);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / static_cast<double>(m);
    return {mean, sumsq / static_cast<double>(m) - mean * mean};
}

}  // namespace

TEST_CASE("student_dof follows the rounded natural log with a floor") {
    CHECK(student_dof(5000) == 9);
    CHECK(student_dof(1000) == 7);
    CHECK(student_dof(2) == 3);
    CHECK(student_dof(10) == 3);  // round(2.30) = 2 clamps up
    CHECK_THROWS(student_dof(1));
}

TEST_CASE("distribution names round-trip") {
    using Kind = FeatureDistribution::Kind;
    for (auto kind : {Kind::gaussian, Kind::student_t, Kind::uniform, Kind::laplace,
                      Kind::rademacher}) {
        auto back = distribution_from_name(distribution_name(kind));
        REQUIRE(back.has_value());
        CHECK(*back == kind);
    }
    CHECK_FALSE(distribution_from_name("cauchy").has_value());
}

TEST_CASE("spec validation rejects each bad field") {
    auto good = base_spec(FeatureDistribution::gaussian(), 10, 20, 5, 2, 1);
    CHECK_NOTHROW(validate_spec(good));

    auto bad = good;
    bad.n = 0;
    CHECK_THROWS(validate_spec(bad));
    bad = good;
    bad.p = 0;
    CHECK_THROWS(validate_spec(bad));
    bad = good;
    bad.s = 0;
    CHECK_THROWS(validate_spec(bad));
    bad = good;
    bad.s = 21;
    CHECK_THROWS(validate_spec(bad));
    bad = good;
    bad.n_corrupt = 11;
    CHECK_THROWS(validate_spec(bad));
    bad = good;
    bad.distribution = FeatureDistribution::student_t(2);
    CHECK_THROWS(validate_spec(bad));
}

TEST_CASE("uniform features live in [-sqrt3, sqrt3] with unit variance") {
    const double limit = std::sqrt(3.0);
    auto spec = base_spec(FeatureDistribution::uniform(), 1000, 1000, 5, 0, 7);
    RandomStream stream = derive_stream(spec.master_seed, StreamPurpose::features);
    Matrix features = sample_features(spec, stream);
    double sum = 0.0;
    double sumsq = 0.0;
    for (const double x : features.data) {
        CHECK(x >= -limit);
        CHECK(x <= limit);
        sum += x;
        sumsq += x * x;
    }
    const auto m = static_cast<double>(features.data.size());
    const double mean = sum / m;
    const double var = sumsq / m - mean * mean;
    CHECK(var >= 0.99);
    CHECK(var <= 1.01);
}

TEST_CASE("rademacher features are two-point") {
    auto spec = base_spec(FeatureDistribution::rademacher(), 100, 100, 5, 0, 7);
    RandomStream stream = derive_stream(spec.master_seed, StreamPurpose::features);
    Matrix features = sample_features(spec, stream);
    for (const double x : features.data) CHECK((x == 1.0 || x == -1.0));
}

TEST_CASE("laplace variance is two by default and one standardized") {
    auto def = sample_moments(FeatureDistribution::laplace(), false, 1000000, 11);
    CHECK(def.var >= 1.97);
    CHECK(def.var <= 2.03);

    auto std1 = sample_moments(FeatureDistribution::laplace(), true, 1000000, 11);
    CHECK(std1.var == doctest::Approx(1.0).epsilon(0.015));
}

TEST_CASE("every distribution is symmetric at the z-test bound") {
    struct Row {
        FeatureDistribution dist;
        double sd;
    };
    const Row rows[] = {
        {FeatureDistribution::gaussian(), 1.0},
        {FeatureDistribution::student_t(9), 1.0},
        {FeatureDistribution::uniform(), 1.0},
        {FeatureDistribution::laplace(), std::sqrt(2.0)},
        {FeatureDistribution::rademacher(), 1.0},
    };
    const std::size_t m = 1000000;
    std::uint64_t seed = 100;
    for (const auto& row : rows) {
        auto est = sample_moments(row.dist, false, m, seed++);
        CHECK(std::abs(est.mean) <= 4.0 * row.sd / 1000.0);
    }
}

TEST_CASE("sparse ground truth has exact support and unit norm") {
    RandomStream stream = derive_stream(3, StreamPurpose::ground_truth);
    auto beta = sample_sparse_rademacher(10, 5, stream);
    REQUIRE(beta.size() == 10);
    std::size_t nonzero = 0;
    const double mag = 1.0 / std::sqrt(5.0);
    for (const double x : beta)
        if (x != 0.0) {
            ++nonzero;
            CHECK(std::abs(std::abs(x) - mag) <= 1e-15);
        }
    CHECK(nonzero == 5);
    CHECK(std::abs(l2_norm(beta) - 1.0) <= 1e-12);

    auto single = sample_sparse_rademacher(1, 1, stream);
    CHECK((single[0] == 1.0 || single[0] == -1.0));

    auto full = sample_sparse_rademacher(4, 4, stream);
    for (const double x : full) CHECK(std::abs(x) == 0.5);

    CHECK_THROWS(sample_sparse_rademacher(3, 4, stream));
}

TEST_CASE("corruption sets hit the forced cases") {
    RandomStream stream = derive_stream(5, StreamPurpose::corruptions);
    CHECK(sample_corruptions(10, 0, stream).empty());
    CHECK(sample_corruptions(3, 3, stream) == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS(sample_corruptions(2, 3, stream));
}

TEST_CASE("corruption sampling is uniform over indices") {
    RandomStream stream = derive_stream(2024, StreamPurpose::corruptions);
    const std::size_t n = 1000;
    const std::size_t k = 40;
    const int draws = 5000;
    std::vector<int> hits(n, 0);
    for (int d = 0; d < draws; ++d)
        for (const std::size_t idx : sample_corruptions(n, k, stream)) ++hits[idx];
    for (const int h : hits) {
        const double freq = static_cast<double>(h) / draws;
        CHECK(freq >= 0.03);
        CHECK(freq <= 0.05);
    }
}

TEST_CASE("labels follow the sign model with the tie convention") {
    Matrix features(3, 2);
    features(0, 0) = 1.0;
    features(0, 1) = 0.0;
    features(1, 0) = 1.0;
    features(1, 1) = 0.0;
    features(2, 0) = 0.0;
    features(2, 1) = 1.0;
    const std::vector<double> truth{1.0, 0.0};

    auto clean = generate_labels(features, truth, {});
    CHECK(clean.labels == std::vector<int>{1, 1, 1});
    CHECK(clean.ties == 1);  // third row projects to zero

    auto flipped = generate_labels(features, truth, {1});
    CHECK(flipped.labels == std::vector<int>{1, -1, 1});
}

TEST_CASE("generation is deterministic and respects the noise dial") {
    auto spec = base_spec(FeatureDistribution::gaussian(), 30, 60, 5, 4, 99);
    Instance a = generate_instance(spec);
    Instance b = generate_instance(spec);
    CHECK(a == b);
    CHECK(a.corruptions().size() == 4);

    // The corruption count must not disturb features or ground truth.
    auto clean_spec = spec;
    clean_spec.n_corrupt = 0;
    Instance clean = generate_instance(clean_spec);
    CHECK(clean.features() == a.features());
    REQUIRE(clean.ground_truth().has_value());
    REQUIRE(a.ground_truth().has_value());
    CHECK(*clean.ground_truth() == *a.ground_truth());

    for (std::size_t i = 0; i < clean.n(); ++i) {
        const double proj =
            dot(clean.features().row(i), clean.ground_truth()->data(), clean.p());
        const int expected = sgn(proj) == 0 ? 1 : sgn(proj);
        CHECK(clean.labels()[i] == expected);
    }

    auto all_spec = spec;
    all_spec.n_corrupt = spec.n;
    Instance all = generate_instance(all_spec);
    for (std::size_t i = 0; i < all.n(); ++i) {
        const double proj = dot(all.features().row(i), all.ground_truth()->data(), all.p());
        const int expected = sgn(proj) == 0 ? 1 : sgn(proj);
        CHECK(all.labels()[i] == -expected);
    }
}

TEST_CASE("every distribution generates a valid instance") {
    const FeatureDistribution dists[] = {
        FeatureDistribution::gaussian(),   FeatureDistribution::student_t(5),
        FeatureDistribution::uniform(),    FeatureDistribution::laplace(),
        FeatureDistribution::rademacher(),
    };
    std::uint64_t seed = 50;
    for (const auto& dist : dists) {
        auto spec = base_spec(dist, 20, 40, 3, 2, seed++);
        GenResult res = generate_instance_detail(spec);
        CHECK(res.instance.n() == 20);
        CHECK(res.instance.p() == 40);
        CHECK(res.instance.seed() == spec.master_seed);
    }
}
