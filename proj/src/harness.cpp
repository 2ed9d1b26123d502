#include "mbcs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mbcs/io.hpp"

namespace mbcs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<FeatureDistribution::Kind> default_distributions() {
    return {FeatureDistribution::Kind::gaussian, FeatureDistribution::Kind::student_t,
            FeatureDistribution::Kind::uniform, FeatureDistribution::Kind::laplace};
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("expected an unsigned integer for " + what + ", got '" +
                                    text + "'");
    }
}

}  // namespace

void ExperimentPlan::normalize() {
    if (name.empty()) throw std::invalid_argument("plan: name must not be empty");
    if (distributions.empty()) throw std::invalid_argument("plan: no distributions");
    if (n_grid.empty()) throw std::invalid_argument("plan: empty n grid");
    if (corrupt_grid.empty()) throw std::invalid_argument("plan: empty corruption grid");
    if (!(p_ratio > 0.0)) throw std::invalid_argument("plan: p ratio must be positive");
    if (s == 0) throw std::invalid_argument("plan: s must be positive");
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("plan: epsilon must lie in (0, 1)");
    if (replications == 0) throw std::invalid_argument("plan: replications must be positive");
    if (!with_adaboost && !with_lp) throw std::invalid_argument("plan: no estimators selected");
    if (!use_iterations_rule && fixed_iterations == 0)
        throw std::invalid_argument("plan: fixed iteration count must be positive");

    auto by_name = [](FeatureDistribution::Kind a, FeatureDistribution::Kind b) {
        return std::string_view(distribution_name(a)) < std::string_view(distribution_name(b));
    };
    std::sort(distributions.begin(), distributions.end(), by_name);
    distributions.erase(std::unique(distributions.begin(), distributions.end()),
                        distributions.end());
    std::sort(n_grid.begin(), n_grid.end());
    n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());
    std::sort(corrupt_grid.begin(), corrupt_grid.end());
    corrupt_grid.erase(std::unique(corrupt_grid.begin(), corrupt_grid.end()),
                       corrupt_grid.end());

    for (const std::size_t n : n_grid) {
        if (n == 0) throw std::invalid_argument("plan: n must be positive");
        const std::size_t p = static_cast<std::size_t>(std::llround(p_ratio * n));
        if (p == 0 || s > p) throw std::invalid_argument("plan: s exceeds p at the smallest n");
        for (const std::size_t k : corrupt_grid)
            if (k > n) throw std::invalid_argument("plan: corruption count exceeds n");
    }
}

ExperimentPlan builtin_plan(const std::string& name) {
    ExperimentPlan plan;
    plan.name = name;
    plan.distributions = default_distributions();
    plan.n_grid = {100, 200, 300, 400, 500};
    if (name == "figure1-left") {
        plan.corrupt_grid = {40};
    } else if (name == "figure1-right") {
        plan.n_grid = {500};
        plan.corrupt_grid = {0, 10, 20, 40};
    } else if (name == "figure2-left") {
        plan.corrupt_grid = {0};
    } else if (name == "figure2-right") {
        plan.corrupt_grid = {0};
    } else if (name == "smoke") {
        plan.distributions = {FeatureDistribution::Kind::gaussian};
        plan.n_grid = {40, 80};
        plan.corrupt_grid = {0, 4};
        plan.replications = 3;
    } else {
        throw std::invalid_argument("unknown builtin plan '" + name +
                                    "'; available: figure1-left, figure1-right, figure2-left, "
                                    "figure2-right, smoke");
    }
    plan.normalize();
    return plan;
}

std::vector<std::string> builtin_plan_names() {
    return {"figure1-left", "figure1-right", "figure2-left", "figure2-right", "smoke"};
}

ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    plan.distributions = default_distributions();
    plan.n_grid = {100, 200, 300, 400, 500};
    plan.corrupt_grid = {0};
    plan.name = "custom";

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));

        if (key == "name") {
            plan.name = value;
        } else if (key == "distributions") {
            plan.distributions.clear();
            for (const std::string& tok : split(value, ',')) {
                const auto kind = distribution_from_name(tok);
                if (!kind)
                    throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                                ": unknown distribution '" + tok + "'");
                plan.distributions.push_back(*kind);
            }
        } else if (key == "n_grid") {
            plan.n_grid.clear();
            for (const std::string& tok : split(value, ','))
                plan.n_grid.push_back(parse_u64(tok, "n_grid"));
        } else if (key == "corrupt_grid") {
            plan.corrupt_grid.clear();
            for (const std::string& tok : split(value, ','))
                plan.corrupt_grid.push_back(parse_u64(tok, "corrupt_grid"));
        } else if (key == "p_ratio") {
            plan.p_ratio = parse_double(value);
        } else if (key == "s") {
            plan.s = parse_u64(value, "s");
        } else if (key == "epsilon") {
            plan.epsilon = parse_double(value);
        } else if (key == "iterations") {
            if (value == "rule") {
                plan.use_iterations_rule = true;
            } else {
                plan.use_iterations_rule = false;
                plan.fixed_iterations = parse_u64(value, "iterations");
            }
        } else if (key == "replications") {
            plan.replications = parse_u64(value, "replications");
        } else if (key == "estimators") {
            plan.with_adaboost = false;
            plan.with_lp = false;
            for (const std::string& tok : split(value, ',')) {
                if (tok == "adaboost")
                    plan.with_adaboost = true;
                else if (tok == "lp")
                    plan.with_lp = true;
                else
                    throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                                ": unknown estimator '" + tok + "'");
            }
        } else if (key == "master_seed") {
            plan.master_seed = parse_u64(value, "master_seed");
        } else if (key == "student_dof") {
            plan.student_dof_override = parse_u64(value, "student_dof");
        } else if (key == "standardize_laplace") {
            if (value == "1" || value == "true")
                plan.standardize_laplace = true;
            else if (value == "0" || value == "false")
                plan.standardize_laplace = false;
            else
                throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                            ": expected a boolean");
        } else if (key == "mc_samples") {
            plan.mc_samples = parse_u64(value, "mc_samples");
        } else {
            throw std::invalid_argument("plan line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    plan.normalize();
    return plan;
}

ExperimentPlan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file: " + path);
    return parse_plan(in);
}

void scale_plan(ExperimentPlan& plan, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("scale must be positive");
    for (std::size_t& n : plan.n_grid) {
        const long long scaled = std::llround(k * static_cast<double>(n));
        n = scaled < 1 ? 1 : static_cast<std::size_t>(scaled);
    }
    for (std::size_t& c : plan.corrupt_grid)
        c = std::min(c, *std::min_element(plan.n_grid.begin(), plan.n_grid.end()));
    plan.normalize();
}

namespace {

std::uint64_t dof_for(const ExperimentPlan& plan, FeatureDistribution::Kind kind,
                      std::size_t p) {
    if (kind != FeatureDistribution::Kind::student_t) return 0;
    if (plan.student_dof_override) return *plan.student_dof_override;
    return student_dof(p);
}

std::string cell_string(const ExperimentPlan& plan, FeatureDistribution::Kind kind,
                        std::size_t n, std::size_t p, std::size_t n_corrupt) {
    std::string s = distribution_name(kind);
    s += "|n=" + std::to_string(n);
    s += "|p=" + std::to_string(p);
    s += "|s=" + std::to_string(plan.s);
    s += "|k=" + std::to_string(n_corrupt);
    s += "|dof=" + std::to_string(dof_for(plan, kind, p));
    s += "|lap=" + std::to_string(plan.standardize_laplace ? 1 : 0);
    return s;
}

}  // namespace

std::uint64_t cell_seed(const ExperimentPlan& plan, FeatureDistribution::Kind kind,
                        std::size_t n, std::size_t p, std::size_t n_corrupt,
                        std::size_t replication) {
    const std::string cell = cell_string(plan, kind, n, p, n_corrupt);
    const std::uint64_t h = fnv1a64(cell.data(), cell.size());
    std::uint64_t state = plan.master_seed;
    const std::uint64_t a = splitmix64(state);
    state = a ^ h;
    const std::uint64_t b = splitmix64(state);
    state = b ^ static_cast<std::uint64_t>(replication);
    return splitmix64(state);
}

bool ResultTable::all_ok() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const ResultRow& r) { return r.status == "ok"; });
}

namespace {

struct WorkItem {
    FeatureDistribution::Kind kind;
    std::size_t n, p, n_corrupt, replication;
    std::size_t row_base;  // first row slot owned by this item
};

void fill_common(ResultRow& row, const ExperimentPlan& plan, const WorkItem& item,
                 std::uint64_t seed) {
    row.plan = plan.name;
    row.distribution = item.kind;
    row.n = item.n;
    row.p = item.p;
    row.s = plan.s;
    row.n_corrupt = item.n_corrupt;
    row.replication = item.replication;
    row.seed = seed;
    row.margin = kNaN;
    row.margin_ratio = kNaN;
    row.prediction_error = kNaN;
    row.l2_direction_error = kNaN;
    row.loss = kNaN;
}

std::uint64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
    const auto d = std::chrono::steady_clock::now() - start;
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
}

void run_item(const ExperimentPlan& plan, const RunOptions& options, const WorkItem& item,
              std::vector<ResultRow>& rows) {
    const std::uint64_t seed =
        cell_seed(plan, item.kind, item.n, item.p, item.n_corrupt, item.replication);

    FeatureDistribution dist;
    dist.kind = item.kind;
    dist.dof = dof_for(plan, item.kind, item.p);

    GenSpec spec;
    spec.n = item.n;
    spec.p = item.p;
    spec.s = plan.s;
    spec.n_corrupt = item.n_corrupt;
    spec.distribution = dist;
    spec.master_seed = seed;
    spec.standardize_laplace = plan.standardize_laplace;

    std::size_t slot = item.row_base;
    ResultRow* ada_row = plan.with_adaboost ? &rows[slot++] : nullptr;
    ResultRow* lp_row = plan.with_lp ? &rows[slot++] : nullptr;
    if (ada_row) {
        fill_common(*ada_row, plan, item, seed);
        ada_row->estimator = EstimatorTag::adaboost;
        ada_row->status = "error";
    }
    if (lp_row) {
        fill_common(*lp_row, plan, item, seed);
        lp_row->estimator = EstimatorTag::lp;
        lp_row->status = "error";
    }

    std::optional<Instance> generated;
    try {
        generated = generate_instance(spec);
    } catch (const std::exception&) {
        if (ada_row) ada_row->status = "gen_error";
        if (lp_row) lp_row->status = "gen_error";
        return;
    }
    const Instance& instance = *generated;

    EvalOptions eval;
    eval.distribution = dist;
    eval.standardize_laplace = plan.standardize_laplace;
    eval.mc_samples = plan.mc_samples;
    eval.eval_seed = seed;

    std::optional<double> gamma;
    if (lp_row) {
        const auto start = std::chrono::steady_clock::now();
        const LpSolution sol = solve_max_margin(instance);
        if (options.timing) lp_row->wall_time_ms = elapsed_ms(start);
        lp_row->iterations = sol.pivots;
        if (sol.status == LpSolution::Status::optimal) {
            gamma = sol.margin;
            Model model;
            model.coefficients = sol.beta_hat;
            model.estimator = EstimatorTag::lp;
            model.iterations = sol.pivots;
            eval.gamma = gamma;
            try {
                const MetricsRecord rec = evaluate_model(instance, model, eval);
                lp_row->margin = rec.margin;
                lp_row->margin_ratio = rec.margin_ratio.value_or(kNaN);
                lp_row->prediction_error = rec.prediction_error;
                lp_row->l2_direction_error = rec.l2_direction_error;
                lp_row->loss = rec.loss;
                lp_row->status = "ok";
            } catch (const std::exception&) {
                lp_row->status = "eval_error";
            }
        } else if (sol.status == LpSolution::Status::infeasible) {
            lp_row->status = "lp_infeasible";
        } else {
            lp_row->status = "lp_degenerate";
            lp_row->margin = sol.margin;  // best-known bound from the last iterate
        }
    }

    if (ada_row) {
        const std::uint64_t T =
            plan.use_iterations_rule
                ? iterations_rule(item.n, plan.s, item.n_corrupt, item.p, plan.epsilon)
                : plan.fixed_iterations;
        ada_row->iterations = T;
        BoostConfig config;
        config.learning_rate = plan.epsilon;
        config.max_iterations = T;
        config.record_every = std::max<std::uint64_t>(T, 1);  // final record only
        const auto start = std::chrono::steady_clock::now();
        try {
            auto [model, traj] = run_adaboost(instance, config);
            if (options.timing) ada_row->wall_time_ms = elapsed_ms(start);
            if (model.degenerate) {
                ada_row->status = "boost_degenerate";
                ada_row->loss = 1.0;  // exp_loss at the zero vector
            } else {
                eval.gamma = gamma;
                const MetricsRecord rec = evaluate_model(instance, model, eval);
                ada_row->margin = rec.margin;
                ada_row->margin_ratio = rec.margin_ratio.value_or(kNaN);
                ada_row->prediction_error = rec.prediction_error;
                ada_row->l2_direction_error = rec.l2_direction_error;
                ada_row->loss = rec.loss;
                ada_row->status = "ok";
            }
        } catch (const BoostNumericalError&) {
            ada_row->status = "boost_error";
        } catch (const std::exception&) {
            ada_row->status = "eval_error";
        }
    }
}

}  // namespace

ResultTable run_plan(const ExperimentPlan& plan_in, const RunOptions& options) {
    ExperimentPlan plan = plan_in;
    plan.normalize();

    const std::size_t estimators = (plan.with_adaboost ? 1 : 0) + (plan.with_lp ? 1 : 0);
    std::vector<WorkItem> items;
    std::size_t row_count = 0;
    for (const FeatureDistribution::Kind kind : plan.distributions) {
        for (const std::size_t n : plan.n_grid) {
            const std::size_t p = static_cast<std::size_t>(std::llround(plan.p_ratio * n));
            for (const std::size_t k : plan.corrupt_grid) {
                for (std::size_t rep = 0; rep < plan.replications; ++rep) {
                    items.push_back({kind, n, p, k, rep, row_count});
                    row_count += estimators;
                }
            }
        }
    }

    ResultTable table;
    table.rows.resize(row_count);

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, items.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            run_item(plan, options, items[i], table.rows);
            if (options.progress)
                std::fprintf(stderr, "[%s] %zu/%zu\n", plan.name.c_str(), i + 1, items.size());
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> done{0};
        auto worker = [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= items.size()) return;
                run_item(plan, options, items[i], table.rows);
                const std::size_t d = done.fetch_add(1) + 1;
                if (options.progress)
                    std::fprintf(stderr, "[%s] %zu/%zu\n", plan.name.c_str(), d, items.size());
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return table;
}

namespace {

constexpr const char* kResultsHeader =
    "plan,distribution,n,p,s,n_corrupt,replication,seed,estimator,margin,margin_ratio,"
    "prediction_error,l2_direction_error,loss,iterations,wall_time_ms,status";

}  // namespace

void write_results_csv(const ResultTable& table, std::ostream& out) {
    out << kResultsHeader << '\n';
    for (const ResultRow& r : table.rows) {
        out << r.plan << ',' << distribution_name(r.distribution) << ',' << r.n << ',' << r.p
            << ',' << r.s << ',' << r.n_corrupt << ',' << r.replication << ',' << r.seed << ','
            << estimator_name(r.estimator) << ',' << format_double(r.margin) << ','
            << format_double(r.margin_ratio) << ',' << format_double(r.prediction_error) << ','
            << format_double(r.l2_direction_error) << ',' << format_double(r.loss) << ','
            << r.iterations << ',' << r.wall_time_ms << ',' << r.status << '\n';
    }
    if (!out) throw std::runtime_error("results csv: write failed");
}

void write_results_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_results_csv(table, out);
}

ResultTable read_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("results csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultsHeader) throw std::runtime_error("results csv: unexpected header");

    ResultTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (cells.size() != 17)
            throw std::runtime_error("results csv line " + std::to_string(line_no) +
                                     ": expected 17 columns");
        ResultRow r;
        r.plan = cells[0];
        const auto kind = distribution_from_name(cells[1]);
        if (!kind)
            throw std::runtime_error("results csv line " + std::to_string(line_no) +
                                     ": unknown distribution");
        r.distribution = *kind;
        r.n = parse_u64(cells[2], "n");
        r.p = parse_u64(cells[3], "p");
        r.s = parse_u64(cells[4], "s");
        r.n_corrupt = parse_u64(cells[5], "n_corrupt");
        r.replication = parse_u64(cells[6], "replication");
        r.seed = parse_u64(cells[7], "seed");
        const auto tag = estimator_from_name(cells[8]);
        if (!tag)
            throw std::runtime_error("results csv line " + std::to_string(line_no) +
                                     ": unknown estimator");
        r.estimator = *tag;
        r.margin = parse_double(cells[9]);
        r.margin_ratio = parse_double(cells[10]);
        r.prediction_error = parse_double(cells[11]);
        r.l2_direction_error = parse_double(cells[12]);
        r.loss = parse_double(cells[13]);
        r.iterations = parse_u64(cells[14], "iterations");
        r.wall_time_ms = parse_u64(cells[15], "wall_time_ms");
        r.status = cells[16];
        table.rows.push_back(std::move(r));
    }
    return table;
}

ResultTable load_results_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_results_csv(in);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return kNaN;
    if (!(q >= 0.0) || q > 1.0) throw std::invalid_argument("quantile: q must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

Stats stats_of(const std::vector<double>& raw) {
    std::vector<double> vals;
    vals.reserve(raw.size());
    for (const double v : raw)
        if (!std::isnan(v)) vals.push_back(v);
    Stats s;
    if (vals.empty()) {
        s.median = s.mean = s.q25 = s.q75 = kNaN;
        return s;
    }
    double sum = 0.0;
    for (const double v : vals) sum += v;
    s.mean = sum / static_cast<double>(vals.size());
    s.median = quantile(vals, 0.5);
    s.q25 = quantile(vals, 0.25);
    s.q75 = quantile(vals, 0.75);
    return s;
}

}  // namespace

std::vector<CellSummary> summarize(const ResultTable& table) {
    struct Bucket {
        CellSummary cell;
        std::vector<double> margin, margin_ratio, prediction_error, l2, loss;
    };
    std::vector<Bucket> buckets;
    std::map<std::string, std::size_t> index;

    for (const ResultRow& r : table.rows) {
        std::string key = r.plan;
        key += '|';
        key += distribution_name(r.distribution);
        key += '|' + std::to_string(r.n) + '|' + std::to_string(r.p) + '|' +
               std::to_string(r.s) + '|' + std::to_string(r.n_corrupt) + '|' +
               estimator_name(r.estimator);
        auto [it, fresh] = index.emplace(key, buckets.size());
        if (fresh) {
            Bucket b;
            b.cell.plan = r.plan;
            b.cell.distribution = r.distribution;
            b.cell.n = r.n;
            b.cell.p = r.p;
            b.cell.s = r.s;
            b.cell.n_corrupt = r.n_corrupt;
            b.cell.estimator = r.estimator;
            buckets.push_back(std::move(b));
        }
        Bucket& b = buckets[it->second];
        ++b.cell.total;
        if (r.status != "ok") continue;
        ++b.cell.ok;
        b.margin.push_back(r.margin);
        b.margin_ratio.push_back(r.margin_ratio);
        b.prediction_error.push_back(r.prediction_error);
        b.l2.push_back(r.l2_direction_error);
        b.loss.push_back(r.loss);
    }

    std::vector<CellSummary> out;
    out.reserve(buckets.size());
    for (Bucket& b : buckets) {
        b.cell.margin = stats_of(b.margin);
        b.cell.margin_ratio = stats_of(b.margin_ratio);
        b.cell.prediction_error = stats_of(b.prediction_error);
        b.cell.l2_direction_error = stats_of(b.l2);
        b.cell.loss = stats_of(b.loss);
        out.push_back(std::move(b.cell));
    }
    return out;
}

namespace {

void write_stats(std::ostream& out, const Stats& s) {
    out << ',' << format_double(s.median) << ',' << format_double(s.mean) << ','
        << format_double(s.q25) << ',' << format_double(s.q75);
}

}  // namespace

void write_summary_csv(const std::vector<CellSummary>& cells, std::ostream& out) {
    out << "plan,distribution,n,p,s,n_corrupt,estimator,replications,ok";
    for (const char* metric : {"prediction_error", "margin", "margin_ratio",
                               "l2_direction_error", "loss"})
        out << ",median_" << metric << ",mean_" << metric << ",q25_" << metric << ",q75_"
            << metric;
    out << '\n';
    for (const CellSummary& c : cells) {
        out << c.plan << ',' << distribution_name(c.distribution) << ',' << c.n << ',' << c.p
            << ',' << c.s << ',' << c.n_corrupt << ',' << estimator_name(c.estimator) << ','
            << c.total << ',' << c.ok;
        write_stats(out, c.prediction_error);
        write_stats(out, c.margin);
        write_stats(out, c.margin_ratio);
        write_stats(out, c.l2_direction_error);
        write_stats(out, c.loss);
        out << '\n';
    }
    if (!out) throw std::runtime_error("summary csv: write failed");
}

void write_summary_csv(const std::vector<CellSummary>& cells, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_summary_csv(cells, out);
}

}  // namespace mbcs
