#include "mbcs/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace mbcs {

namespace {

constexpr char kMagic[5] = {'M', 'B', 'C', 'S', '1'};
constexpr unsigned char kFlagGroundTruth = 0x01;
constexpr unsigned char kFlagCorruptions = 0x02;

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8))
        throw std::runtime_error("instance file: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void put_payload(std::ostream& out, const double* data, std::uint64_t count) {
    put_u64(out, count);
    for (std::uint64_t i = 0; i < count; ++i) put_f64(out, data[i]);
}

std::vector<double> get_payload(std::istream& in, std::uint64_t expected) {
    const std::uint64_t count = get_u64(in);
    if (count != expected) throw std::runtime_error("instance file: payload size mismatch");
    std::vector<double> out(count);
    for (std::uint64_t i = 0; i < count; ++i) out[i] = get_f64(in);
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

bool has_csv_extension(const std::string& path) {
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw std::invalid_argument("malformed number: '" + text + "'");
    return value;
}

void write_instance_mbcs(const Instance& instance, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    unsigned char flags = 0;
    if (instance.ground_truth()) flags |= kFlagGroundTruth;
    if (!instance.corruptions().empty()) flags |= kFlagCorruptions;
    const char header_tail[3] = {static_cast<char>(flags), 0, 0};
    out.write(header_tail, sizeof(header_tail));
    put_u64(out, instance.n());
    put_u64(out, instance.p());
    put_u64(out, instance.seed());

    put_payload(out, instance.features().data.data(), instance.n() * instance.p());
    std::vector<double> labels(instance.n());
    for (std::size_t i = 0; i < instance.n(); ++i) labels[i] = instance.labels()[i];
    put_payload(out, labels.data(), labels.size());
    if (instance.ground_truth())
        put_payload(out, instance.ground_truth()->data(), instance.p());
    if (!instance.corruptions().empty()) {
        std::vector<double> idx(instance.corruptions().begin(), instance.corruptions().end());
        put_payload(out, idx.data(), idx.size());
    }
    if (!out) throw std::runtime_error("instance file: write failed");
}

Instance read_instance_mbcs(std::istream& in) {
    char magic[5];
    char tail[3];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("instance file: bad magic");
    if (!in.read(tail, sizeof(tail))) throw std::runtime_error("instance file: truncated");
    const unsigned char flags = static_cast<unsigned char>(tail[0]);
    if ((flags & ~(kFlagGroundTruth | kFlagCorruptions)) != 0 || tail[1] != 0 || tail[2] != 0)
        throw std::runtime_error("instance file: unknown flags");

    const std::uint64_t n = get_u64(in);
    const std::uint64_t p = get_u64(in);
    const std::uint64_t seed = get_u64(in);
    if (n == 0 || p == 0 || n * p / p != n || n * p > (1ULL << 32))
        throw std::runtime_error("instance file: implausible dimensions");

    Matrix features(n, p);
    features.data = get_payload(in, n * p);

    const std::vector<double> raw_labels = get_payload(in, n);
    std::vector<int> labels(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        if (raw_labels[i] != 1.0 && raw_labels[i] != -1.0)
            throw std::runtime_error("instance file: label not +-1");
        labels[i] = static_cast<int>(raw_labels[i]);
    }

    std::optional<std::vector<double>> ground_truth;
    if (flags & kFlagGroundTruth) ground_truth = get_payload(in, p);

    std::vector<std::size_t> corruptions;
    if (flags & kFlagCorruptions) {
        const std::uint64_t count = get_u64(in);
        if (count > n) throw std::runtime_error("instance file: corruption count exceeds n");
        corruptions.resize(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = get_f64(in);
            if (!(v >= 0.0) || v != std::floor(v))
                throw std::runtime_error("instance file: non-integral corruption index");
            corruptions[i] = static_cast<std::size_t>(v);
        }
    }

    return Instance::create(std::move(features), std::move(labels), std::move(ground_truth),
                            std::move(corruptions), seed);
}

void write_instance_csv(const Instance& instance, std::ostream& out) {
    for (std::size_t j = 0; j < instance.p(); ++j) out << 'x' << j << ',';
    out << "label\n";
    for (std::size_t i = 0; i < instance.n(); ++i) {
        const double* row = instance.features().row(i);
        for (std::size_t j = 0; j < instance.p(); ++j) out << format_double(row[j]) << ',';
        out << instance.labels()[i] << '\n';
    }
    if (!out) throw std::runtime_error("instance csv: write failed");
}

Instance read_instance_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("instance csv: empty file");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("instance csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().size() < 2)
        throw std::runtime_error("instance csv: no data rows");

    const std::size_t n = rows.size();
    const std::size_t p = rows.front().size() - 1;
    Matrix features(n, p);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) features(i, j) = rows[i][j];
        const double y = rows[i][p];
        if (y != 1.0 && y != -1.0) throw std::runtime_error("instance csv: label not +-1");
        labels[i] = static_cast<int>(y);
    }
    return Instance::create(std::move(features), std::move(labels), std::nullopt, {}, 0);
}

void write_instance(const Instance& instance, const std::string& path) {
    std::ofstream out = open_out(path);
    if (has_csv_extension(path))
        write_instance_csv(instance, out);
    else
        write_instance_mbcs(instance, out);
}

Instance read_instance(const std::string& path) {
    std::ifstream in = open_in(path);
    if (has_csv_extension(path)) return read_instance_csv(in);
    return read_instance_mbcs(in);
}

void write_model_json(const Model& model, const std::string& path) {
    nlohmann::ordered_json j;
    j["format"] = "mbcs-model-v1";
    j["estimator"] = estimator_name(model.estimator);
    j["iterations"] = model.iterations;
    j["learning_rate"] = model.learning_rate;
    j["feature_scale"] = model.feature_scale;
    j["degenerate"] = model.degenerate;
    j["coefficients"] = model.coefficients;
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("model json: write failed");
}

Model read_model_json(const std::string& path) {
    std::ifstream in = open_in(path);
    nlohmann::json j;
    in >> j;
    if (!j.is_object() || j.value("format", "") != "mbcs-model-v1")
        throw std::runtime_error("model json: not a mbcs-model-v1 document");

    Model model;
    const auto tag = estimator_from_name(j.at("estimator").get<std::string>());
    if (!tag) throw std::runtime_error("model json: unknown estimator");
    model.estimator = *tag;
    model.iterations = j.at("iterations").get<std::uint64_t>();
    model.learning_rate = j.at("learning_rate").get<double>();
    model.feature_scale = j.value("feature_scale", 1.0);
    model.degenerate = j.value("degenerate", false);
    model.coefficients = j.at("coefficients").get<std::vector<double>>();
    validate_model(model, model.coefficients.size());
    return model;
}

void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out) {
    out << "t,coordinate,direction,alpha,loss,margin\n";
    for (const TrajectoryRecord& r : trajectory.records) {
        out << r.t << ',' << r.coordinate << ',' << r.direction_sign << ','
            << format_double(r.alpha) << ',' << format_double(r.loss) << ','
            << format_double(r.margin) << '\n';
    }
    if (!out) throw std::runtime_error("trajectory csv: write failed");
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
    std::ofstream out = open_out(path);
    write_trajectory_csv(trajectory, out);
}

void write_certificate_csv(const LpSolution& solution, std::ostream& out) {
    out << "field,value\n";
    out << "status," << lp_status_name(solution.status) << '\n';
    out << "margin," << format_double(solution.margin) << '\n';
    out << "duality_gap," << format_double(solution.duality_gap) << '\n';
    out << "pivots," << solution.pivots << '\n';
    out << "bland," << (solution.bland_activated ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < solution.dual_weights.size(); ++i)
        out << 'w' << i << ',' << format_double(solution.dual_weights[i]) << '\n';
    if (!out) throw std::runtime_error("certificate csv: write failed");
}

void write_certificate_csv(const LpSolution& solution, const std::string& path) {
    std::ofstream out = open_out(path);
    write_certificate_csv(solution, out);
}

void write_metrics_csv(const MetricsRecord& record, std::ostream& out) {
    out << "estimator,prediction_error,prediction_error_method,mc_samples,mc_std_error,"
           "l2_direction_error,margin,margin_ratio,loss,wall_time_ms\n";
    out << estimator_name(record.estimator) << ','
        << format_double(record.prediction_error) << ','
        << prediction_error_method_name(record.prediction_error_method) << ','
        << record.mc_samples << ',' << format_double(record.mc_std_error) << ','
        << format_double(record.l2_direction_error) << ',' << format_double(record.margin)
        << ','
        << (record.margin_ratio ? format_double(*record.margin_ratio) : std::string("nan"))
        << ',' << format_double(record.loss) << ',' << record.wall_time_ms << '\n';
    if (!out) throw std::runtime_error("metrics csv: write failed");
}

void write_metrics_csv(const MetricsRecord& record, const std::string& path) {
    std::ofstream out = open_out(path);
    write_metrics_csv(record, out);
}

}  // namespace mbcs
