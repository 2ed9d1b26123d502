#pragma once

#include <iosfwd>
#include <string>

#include "mbcs/core.hpp"
#include "mbcs/lpmargin.hpp"
#include "mbcs/metrics.hpp"

// Serialization. docs/FORMATS.md describes every format byte-for-byte.
// All writers are deterministic: a value has exactly one encoding
// (shortest round-trip decimal for doubles), so identical data yields
// identical bytes.

namespace mbcs {

/// Shortest decimal string that parses back to exactly this double;
/// "nan"/"inf"/"-inf" for the non-finite values.
std::string format_double(double x);

/// Parses what format_double produces (plus ordinary decimal floats).
/// Throws std::invalid_argument on malformed text.
double parse_double(const std::string& text);

// Binary instance container, magic "MBCS1", little-endian throughout:
// magic(5) flags(1) reserved(2) n(u64) p(u64) seed(u64), then
// count-prefixed f64 payloads: features (n*p row-major), labels (+-1),
// then ground truth and corruption indices when flagged present.
void write_instance_mbcs(const Instance& instance, std::ostream& out);
Instance read_instance_mbcs(std::istream& in);

// Lossless per-sample CSV: header x0..x{p-1},label; carries no ground
// truth, corruption set, or seed.
void write_instance_csv(const Instance& instance, std::ostream& out);
Instance read_instance_csv(std::istream& in);

/// Dispatch by extension: ".csv" is the CSV form, anything else MBCS1.
void write_instance(const Instance& instance, const std::string& path);
Instance read_instance(const std::string& path);

// Model JSON: format tag "mbcs-model-v1" with estimator, coefficients,
// iterations, learning_rate, feature_scale, degenerate.
void write_model_json(const Model& model, const std::string& path);
Model read_model_json(const std::string& path);

/// Trajectory CSV: header t,coordinate,direction,alpha,loss,margin.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

// Margin certificate: a two-column field,value CSV carrying status,
// margin, duality gap, pivot count, and one w<i> row per dual weight.
void write_certificate_csv(const LpSolution& solution, std::ostream& out);
void write_certificate_csv(const LpSolution& solution, const std::string& path);

/// One-row metrics CSV with a header.
void write_metrics_csv(const MetricsRecord& record, std::ostream& out);
void write_metrics_csv(const MetricsRecord& record, const std::string& path);

}  // namespace mbcs
