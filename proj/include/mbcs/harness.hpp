#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mbcs/adaboost.hpp"
#include "mbcs/datagen.hpp"
#include "mbcs/lpmargin.hpp"
#include "mbcs/metrics.hpp"

// Experiment orchestration: parameter grids -> deterministic result
// table -> aggregation. A run is a pure function of its plan; worker
// count and scheduling never change a byte of output. Per-replication
// seeds derive from (master_seed, cell identity, replication), so any
// single cell can be reproduced in isolation.

namespace mbcs {

struct ExperimentPlan {
    std::string name;
    std::vector<FeatureDistribution::Kind> distributions;
    std::vector<std::size_t> n_grid;
    double p_ratio = 10.0;  // p = round(ratio * n)
    std::size_t s = 5;
    std::vector<std::size_t> corrupt_grid;
    double epsilon = 0.2;
    bool use_iterations_rule = true;
    std::uint64_t fixed_iterations = 0;  // when !use_iterations_rule
    std::size_t replications = 20;
    bool with_adaboost = true;
    bool with_lp = true;
    std::uint64_t master_seed = 1;
    std::optional<std::uint64_t> student_dof_override;
    bool standardize_laplace = false;
    std::uint64_t mc_samples = 100000;

    /// Throws std::invalid_argument on the first bad field; sorts and
    /// dedupes the grids so row order is well defined.
    void normalize();
};

/// The five shipped plans: figure1-left, figure1-right, figure2-left,
/// figure2-right, smoke. Throws std::invalid_argument on other names.
ExperimentPlan builtin_plan(const std::string& name);
std::vector<std::string> builtin_plan_names();

/// Flat key=value plan text ('#' comments and blank lines allowed);
/// docs/FORMATS.md lists the keys. Throws std::invalid_argument with
/// the offending line.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan load_plan(const std::string& path);

/// Multiplies every n by k (clamped to at least 1). Corruption counts
/// are left alone so corruption levels stay comparable across scales.
void scale_plan(ExperimentPlan& plan, double k);

struct ResultRow {
    std::string plan;
    FeatureDistribution::Kind distribution = FeatureDistribution::Kind::gaussian;
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t s = 0;
    std::size_t n_corrupt = 0;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    EstimatorTag estimator = EstimatorTag::external;
    double margin = 0.0;
    double margin_ratio = 0.0;
    double prediction_error = 0.0;
    double l2_direction_error = 0.0;
    double loss = 0.0;
    std::uint64_t iterations = 0;
    std::uint64_t wall_time_ms = 0;
    std::string status;  // "ok" or a failure tag; failures keep the grid rectangular
};

struct ResultTable {
    std::vector<ResultRow> rows;

    bool all_ok() const;
};

/// Replication seed: splitmix chain over master_seed, the FNV-1a hash
/// of the canonical cell string (distribution, dims, corruption count,
/// dof, laplace flag), and the replication index.
std::uint64_t cell_seed(const ExperimentPlan& plan, FeatureDistribution::Kind kind,
                        std::size_t n, std::size_t p, std::size_t n_corrupt,
                        std::size_t replication);

struct RunOptions {
    std::size_t workers = 1;
    bool timing = false;  // leave wall_time_ms at 0 so artifacts stay byte-identical
    bool progress = false;
};

/// Runs every (distribution, n, corruption, replication, estimator)
/// combination. Rows come back in lexicographic key order regardless of
/// worker count. Per-cell failures become status tags, never aborts.
ResultTable run_plan(const ExperimentPlan& plan, const RunOptions& options = {});

// Result CSV: header plus one row per result, columns exactly
// plan,distribution,n,p,s,n_corrupt,replication,seed,estimator,margin,
// margin_ratio,prediction_error,l2_direction_error,loss,iterations,
// wall_time_ms,status.
void write_results_csv(const ResultTable& table, std::ostream& out);
void write_results_csv(const ResultTable& table, const std::string& path);
ResultTable read_results_csv(std::istream& in);
ResultTable load_results_csv(const std::string& path);

struct Stats {
    double median = 0.0;
    double mean = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
};

/// Type-7 quantile (linear interpolation between order statistics) of
/// an unsorted sample; NaN on an empty one.
double quantile(std::vector<double> values, double q);

struct CellSummary {
    std::string plan;
    FeatureDistribution::Kind distribution = FeatureDistribution::Kind::gaussian;
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t s = 0;
    std::size_t n_corrupt = 0;
    EstimatorTag estimator = EstimatorTag::external;
    std::size_t total = 0;  // replications seen
    std::size_t ok = 0;     // rows the stats aggregate over
    Stats margin;
    Stats margin_ratio;
    Stats prediction_error;
    Stats l2_direction_error;
    Stats loss;
};

/// Per-cell aggregation over ok rows, in the table's key order.
std::vector<CellSummary> summarize(const ResultTable& table);
void write_summary_csv(const std::vector<CellSummary>& cells, std::ostream& out);
void write_summary_csv(const std::vector<CellSummary>& cells, const std::string& path);

}  // namespace mbcs
