#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "mbcs/core.hpp"
#include "mbcs/datagen.hpp"
#include "mbcs/io.hpp"

using namespace mbcs;

namespace {

Instance sample_instance(std::uint64_t seed, std::size_t n_corrupt) {
    GenSpec spec;
    spec.n = 8;
    spec.p = 12;
    spec.s = 3;
    spec.n_corrupt = n_corrupt;
    spec.distribution = FeatureDistribution::gaussian();
    spec.master_seed = seed;
    return generate_instance(spec);
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path(name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_double round-trips exactly and is canonical") {
    const double values[] = {0.0,
                             -0.0,
                             1.0,
                             0.1,
                             -2.5,
                             1.0 / 3.0,
                             1e-300,
                             1e300,
                             std::numeric_limits<double>::denorm_min(),
                             std::numeric_limits<double>::max(),
                             0.30000000000000004};
    for (const double x : values) {
        const std::string s = format_double(x);
        const double back = parse_double(s);
        CHECK(std::signbit(back) == std::signbit(x));
        CHECK(back == x);
    }
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(std::isnan(parse_double("nan")));
}

TEST_CASE("parse_double rejects malformed text") {
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_double("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double("1.5 "), std::invalid_argument);
}

TEST_CASE("binary instance container round-trips every field") {
    Instance full = sample_instance(11, 3);
    std::stringstream buf;
    write_instance_mbcs(full, buf);
    Instance back = read_instance_mbcs(buf);
    CHECK(back == full);

    Instance plain = Instance::create(Matrix(2, 2, 0.5), {1, -1}, std::nullopt, {}, 7);
    std::stringstream buf2;
    write_instance_mbcs(plain, buf2);
    Instance back2 = read_instance_mbcs(buf2);
    CHECK(back2 == plain);
}

TEST_CASE("binary container writes are byte-deterministic") {
    Instance inst = sample_instance(12, 2);
    std::stringstream a, b;
    write_instance_mbcs(inst, a);
    write_instance_mbcs(inst, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().substr(0, 5) == "MBCS1");
}

TEST_CASE("binary reader rejects corrupted input") {
    Instance inst = sample_instance(13, 0);
    std::stringstream buf;
    write_instance_mbcs(inst, buf);
    std::string bytes = buf.str();

    {
        std::string bad = bytes;
        bad[0] = 'X';
        std::stringstream in(bad);
        CHECK_THROWS(read_instance_mbcs(in));
    }
    {
        std::string truncated = bytes.substr(0, bytes.size() / 2);
        std::stringstream in(truncated);
        CHECK_THROWS(read_instance_mbcs(in));
    }
    {
        std::string bad_flags = bytes;
        bad_flags[5] = 0x40;
        std::stringstream in(bad_flags);
        CHECK_THROWS(read_instance_mbcs(in));
    }
}

TEST_CASE("csv export carries features and labels only") {
    Instance inst = sample_instance(14, 2);
    std::stringstream buf;
    write_instance_csv(inst, buf);

    std::string header;
    std::getline(buf, header);
    CHECK(header == "x0,x1,x2,x3,x4,x5,x6,x7,x8,x9,x10,x11,label");

    buf.seekg(0);
    Instance back = read_instance_csv(buf);
    CHECK(back.features() == inst.features());
    CHECK(back.labels() == inst.labels());
    CHECK_FALSE(back.ground_truth().has_value());
    CHECK(back.corruptions().empty());
    CHECK(back.seed() == 0);
}

TEST_CASE("path dispatch picks the format from the extension") {
    Instance inst = sample_instance(15, 1);

    TempFile bin("io_test_instance.bin");
    write_instance(inst, bin.path);
    Instance from_bin = read_instance(bin.path);
    CHECK(from_bin == inst);

    TempFile csv("io_test_instance.csv");
    write_instance(inst, csv.path);
    Instance from_csv = read_instance(csv.path);
    CHECK(from_csv.features() == inst.features());
    CHECK_FALSE(from_csv.ground_truth().has_value());

    CHECK_THROWS(read_instance("io_test_missing_file.bin"));
}

TEST_CASE("model json round-trips all metadata") {
    Model model;
    model.coefficients = {0.25, -1.0 / 3.0, 0.0, 1e-9};
    model.estimator = EstimatorTag::adaboost;
    model.iterations = 9162;
    model.learning_rate = 1.0 / 6.0;
    model.feature_scale = 4.5;

    TempFile file("io_test_model.json");
    write_model_json(model, file.path);
    Model back = read_model_json(file.path);
    CHECK(back.coefficients == model.coefficients);
    CHECK(back.estimator == model.estimator);
    CHECK(back.iterations == model.iterations);
    CHECK(back.learning_rate == model.learning_rate);
    CHECK(back.feature_scale == model.feature_scale);
    CHECK(back.degenerate == model.degenerate);
}

TEST_CASE("model json validates its format tag") {
    TempFile file("io_test_bad_model.json");
    {
        std::ofstream out(file.path);
        out << "{\"format\": \"something-else\", \"estimator\": \"lp\"}";
    }
    CHECK_THROWS(read_model_json(file.path));
}

TEST_CASE("trajectory csv golden output") {
    Trajectory traj;
    traj.records.push_back({1, 4, 1, 0.5, 0.75, std::numeric_limits<double>::quiet_NaN()});
    traj.records.push_back({2, 0, -1, -0.25, 0.5, 0.125});
    std::stringstream buf;
    write_trajectory_csv(traj, buf);
    CHECK(buf.str() ==
          "t,coordinate,direction,alpha,loss,margin\n"
          "1,4,1,0.5,0.75,nan\n"
          "2,0,-1,-0.25,0.5,0.125\n");
}

TEST_CASE("certificate csv golden output") {
    LpSolution sol;
    sol.status = LpSolution::Status::optimal;
    sol.margin = 0.5;
    sol.duality_gap = 0.0;
    sol.pivots = 3;
    sol.bland_activated = false;
    sol.dual_weights = {0.5, 0.5};
    std::stringstream buf;
    write_certificate_csv(sol, buf);
    CHECK(buf.str() ==
          "field,value\n"
          "status,optimal\n"
          "margin,0.5\n"
          "duality_gap,0\n"
          "pivots,3\n"
          "bland,0\n"
          "w0,0.5\n"
          "w1,0.5\n");
}

TEST_CASE("metrics csv emits one labeled row") {
    MetricsRecord rec;
    rec.estimator = EstimatorTag::lp;
    rec.prediction_error = 0.125;
    rec.prediction_error_method = PredictionErrorMethod::closed_form_gaussian;
    rec.l2_direction_error = 0.5;
    rec.margin = 0.25;
    rec.margin_ratio = 1.0;
    rec.loss = 0.36;
    std::stringstream buf;
    write_metrics_csv(rec, buf);
    CHECK(buf.str() ==
          "estimator,prediction_error,prediction_error_method,mc_samples,mc_std_error,"
          "l2_direction_error,margin,margin_ratio,loss,wall_time_ms\n"
          "lp,0.125,closed_form_gaussian,0,0,0.5,0.25,1,0.36,0\n");

    rec.margin_ratio.reset();
    std::stringstream buf2;
    write_metrics_csv(rec, buf2);
    CHECK(buf2.str().find(",nan,0.36,") != std::string::npos);
}
