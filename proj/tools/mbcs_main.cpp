#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mbcs/adaboost.hpp"
#include "mbcs/core.hpp"
#include "mbcs/datagen.hpp"
#include "mbcs/harness.hpp"
#include "mbcs/io.hpp"
#include "mbcs/lpmargin.hpp"
#include "mbcs/metrics.hpp"
#include "mbcs/svgplot.hpp"

// Exit codes: 0 success, 2 usage or validation error, 3 runtime failure
// (including LP non-optimal statuses and experiment rows that failed).

namespace {

struct GenArgs {
    std::string dist = "gaussian";
    std::size_t n = 0;
    std::size_t p = 0;
    std::size_t s = 0;
    std::size_t corrupt = 0;
    std::uint64_t seed = 1;
    std::uint64_t dof = 0;
    bool dof_set = false;
    bool standardize_laplace = false;
    std::string out;
};

struct FitBoostArgs {
    std::string in;
    double epsilon = 0.2;
    std::uint64_t iters = 0;
    bool iters_set = false;
    bool iters_rule = false;
    std::uint64_t record_every = 1;
    std::string out_model;
    std::string out_trajectory;
};

struct FitLpArgs {
    std::string in;
    std::string out_model;
    std::string out_certificate;
};

struct EvalArgs {
    std::string in;
    std::string model;
    std::string dist;
    std::uint64_t dof = 0;
    bool dof_set = false;
    bool standardize_laplace = false;
    std::uint64_t mc_samples = 100000;
    double gamma = 0.0;
    bool gamma_set = false;
    bool gamma_from_lp = false;
    std::uint64_t eval_seed = 0;
    bool eval_seed_set = false;
    std::string out;
};

struct ExperimentArgs {
    std::string plan;
    double scale = 1.0;
    std::size_t workers = 1;
    std::string out;
    std::string summary;
    bool timing = false;
    bool progress = false;
};

struct PlotArgs {
    std::string in;
    std::string panel;
    std::string out;
};

mbcs::FeatureDistribution make_distribution(const std::string& token, bool dof_set,
                                            std::uint64_t dof, std::size_t p) {
    auto kind = mbcs::distribution_from_name(token);
    if (!kind) throw std::invalid_argument("unknown distribution: " + token);
    if (dof_set && *kind != mbcs::FeatureDistribution::Kind::student_t)
        throw std::invalid_argument("--dof applies to student-t only");
    if (*kind == mbcs::FeatureDistribution::Kind::student_t)
        return mbcs::FeatureDistribution::student_t(dof_set ? dof : mbcs::student_dof(p));
    return {*kind, 0};
}

int run_gen(const GenArgs& args) {
    mbcs::GenSpec spec;
    spec.n = args.n;
    spec.p = args.p;
    spec.s = args.s;
    spec.n_corrupt = args.corrupt;
    spec.distribution = make_distribution(args.dist, args.dof_set, args.dof, args.p);
    spec.master_seed = args.seed;
    spec.standardize_laplace = args.standardize_laplace;

    mbcs::GenResult result = mbcs::generate_instance_detail(spec);
    if (result.label_ties > 0)
        std::cerr << "note: " << result.label_ties
                  << " sample(s) had an exactly zero projection; labeled +1\n";
    mbcs::write_instance(result.instance, args.out);
    std::cout << "wrote " << args.out << " (n=" << spec.n << " p=" << spec.p << " s=" << spec.s
              << " corrupt=" << spec.n_corrupt << " dist=" << args.dist
              << " seed=" << spec.master_seed
              << ")\n";
    return 0;
}

int run_fit_adaboost(const FitBoostArgs& args) {
    mbcs::Instance instance = mbcs::read_instance(args.in);

    mbcs::BoostConfig config;
    config.learning_rate = args.epsilon;
    config.record_every = args.record_every;
    if (args.iters_rule) {
        const auto& gt = instance.ground_truth();
        if (!gt)
            throw std::invalid_argument(
                "--iters-rule needs a ground truth on the instance; pass --iters instead");
        auto s = static_cast<std::uint64_t>(
            std::count_if(gt->begin(), gt->end(), [](double v) { return v != 0.0; }));
        config.max_iterations =
            mbcs::iterations_rule(instance.features().rows, s, instance.corruptions().size(),
                                  instance.features().cols, args.epsilon);
    } else {
        config.max_iterations = args.iters;
    }
    config.validate();

    auto [model, trajectory] = mbcs::run_adaboost(instance, config);
    mbcs::write_model_json(model, args.out_model);
    if (!args.out_trajectory.empty()) mbcs::write_trajectory_csv(trajectory, args.out_trajectory);

    std::cout << "iterations=" << trajectory.total_iterations;
    if (!trajectory.records.empty()) {
        const auto& last = trajectory.records.back();
        std::cout << " loss=" << mbcs::format_double(last.loss)
                  << " margin=" << mbcs::format_double(last.margin);
    }
    if (model.degenerate) std::cout << " degenerate=1";
    std::cout << "\n";
    return 0;
}

int run_fit_lp(const FitLpArgs& args) {
    mbcs::Instance instance = mbcs::read_instance(args.in);
    mbcs::LpSolution solution = mbcs::solve_max_margin(instance);

    if (!args.out_certificate.empty()) mbcs::write_certificate_csv(solution, args.out_certificate);

    std::cout << "status=" << mbcs::lp_status_name(solution.status)
              << " margin=" << mbcs::format_double(solution.margin)
              << " gap=" << mbcs::format_double(solution.duality_gap)
              << " pivots=" << solution.pivots << "\n";

    if (solution.status != mbcs::LpSolution::Status::optimal) {
        std::cerr << "error: margin LP ended " << mbcs::lp_status_name(solution.status)
                  << "; no model written\n";
        return 3;
    }

    mbcs::Model model;
    model.coefficients = solution.beta_hat;
    model.estimator = mbcs::EstimatorTag::lp;
    model.iterations = solution.pivots;
    mbcs::write_model_json(model, args.out_model);
    return 0;
}

int run_eval(const EvalArgs& args) {
    mbcs::Instance instance = mbcs::read_instance(args.in);
    mbcs::Model model = mbcs::read_model_json(args.model);
    if (model.coefficients.size() != instance.features().cols)
        throw std::invalid_argument("model has " + std::to_string(model.coefficients.size()) +
                                    " coefficients but the instance has " +
                                    std::to_string(instance.features().cols) + " columns");

    mbcs::EvalOptions options;
    if (!args.dist.empty())
        options.distribution =
            make_distribution(args.dist, args.dof_set, args.dof, instance.features().cols);
    options.standardize_laplace = args.standardize_laplace;
    options.mc_samples = args.mc_samples;
    options.eval_seed = args.eval_seed_set ? args.eval_seed : instance.seed();
    if (args.gamma_set && args.gamma_from_lp)
        throw std::invalid_argument("--gamma and --gamma-from-lp are exclusive");
    if (args.gamma_set) {
        options.gamma = args.gamma;
    } else if (args.gamma_from_lp) {
        mbcs::LpSolution lp = mbcs::solve_max_margin(instance);
        if (lp.status != mbcs::LpSolution::Status::optimal)
            throw std::runtime_error(std::string("margin LP ended ") +
                                     mbcs::lp_status_name(lp.status) +
                                     "; no margin ratio available");
        options.gamma = lp.margin;
    }

    mbcs::MetricsRecord record = mbcs::evaluate_model(instance, model, options);
    if (args.out.empty())
        mbcs::write_metrics_csv(record, std::cout);
    else
        mbcs::write_metrics_csv(record, args.out);
    return 0;
}

int run_experiment(const ExperimentArgs& args) {
    mbcs::ExperimentPlan plan;
    const auto names = mbcs::builtin_plan_names();
    if (std::find(names.begin(), names.end(), args.plan) != names.end())
        plan = mbcs::builtin_plan(args.plan);
    else
        plan = mbcs::load_plan(args.plan);
    if (args.scale != 1.0) mbcs::scale_plan(plan, args.scale);

    mbcs::RunOptions options;
    options.workers = args.workers;
    options.timing = args.timing;
    options.progress = args.progress;

    mbcs::ResultTable table = mbcs::run_plan(plan, options);
    mbcs::write_results_csv(table, args.out);
    if (!args.summary.empty()) mbcs::write_summary_csv(mbcs::summarize(table), args.summary);

    std::size_t failed = 0;
    for (const auto& row : table.rows)
        if (row.status != "ok") ++failed;
    std::cout << "rows=" << table.rows.size() << " failed=" << failed << " -> " << args.out
              << "\n";
    if (failed > 0) {
        std::cerr << "error: " << failed << " row(s) did not finish cleanly\n";
        return 3;
    }
    return 0;
}

int run_plot(const PlotArgs& args) {
    mbcs::ResultTable table = mbcs::load_results_csv(args.in);
    mbcs::PanelSpec panel = mbcs::panel_spec(args.panel);
    std::string svg = mbcs::render_plot(table, panel);
    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + args.out);
    out << svg;
    if (!out) throw std::runtime_error("write failed: " + args.out);
    std::cout << "wrote " << args.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-bit compressed sensing workbench: AdaBoost, max-l1-margin LP, experiments"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
    gen->add_option("--dist", gen_args.dist,
                    "feature distribution: gaussian|student-t|uniform|laplace|rademacher")
        ->capture_default_str();
    gen->add_option("--n", gen_args.n, "number of samples")->required();
    gen->add_option("--p", gen_args.p, "dimension")->required();
    gen->add_option("--s", gen_args.s, "ground-truth sparsity")->required();
    gen->add_option("--corrupt", gen_args.corrupt, "number of flipped labels")
        ->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "master seed")->capture_default_str();
    auto* gen_dof = gen->add_option("--dof", gen_args.dof, "student-t degrees of freedom");
    gen->add_flag("--standardize-laplace", gen_args.standardize_laplace,
                  "scale laplace features to unit variance");
    gen->add_option("--out", gen_args.out, "output path (.csv for CSV, else binary)")->required();

    FitBoostArgs boost_args;
    auto* fitb = app.add_subcommand("fit-adaboost", "run AdaBoost on an instance");
    fitb->add_option("--in", boost_args.in, "instance path")->required();
    fitb->add_option("--epsilon", boost_args.epsilon, "learning rate in (0,1)")
        ->capture_default_str();
    auto* iters_opt = fitb->add_option("--iters", boost_args.iters, "iteration count");
    auto* rule_opt = fitb->add_flag("--iters-rule", boost_args.iters_rule,
                                    "derive the iteration count from the instance");
    iters_opt->excludes(rule_opt);
    rule_opt->excludes(iters_opt);
    fitb->add_option("--record-every", boost_args.record_every, "trajectory thinning stride")
        ->capture_default_str();
    fitb->add_option("--out-model", boost_args.out_model, "model JSON path")->required();
    fitb->add_option("--out-trajectory", boost_args.out_trajectory, "trajectory CSV path");

    FitLpArgs lp_args;
    auto* fitl = app.add_subcommand("fit-lp", "solve the max-l1-margin LP");
    fitl->add_option("--in", lp_args.in, "instance path")->required();
    fitl->add_option("--out-model", lp_args.out_model, "model JSON path")->required();
    fitl->add_option("--out-certificate", lp_args.out_certificate,
                     "certificate CSV (status, margin, gap, dual weights)");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate a fitted model on an instance");
    eval->add_option("--in", eval_args.in, "instance path")->required();
    eval->add_option("--model", eval_args.model, "model JSON path")->required();
    eval->add_option("--dist", eval_args.dist,
                     "feature distribution; enables prediction error (closed form for gaussian)");
    auto* eval_dof = eval->add_option("--dof", eval_args.dof, "student-t degrees of freedom");
    eval->add_flag("--standardize-laplace", eval_args.standardize_laplace,
                   "laplace features were standardized");
    eval->add_option("--mc-samples", eval_args.mc_samples, "Monte Carlo sample count")
        ->capture_default_str();
    auto* gamma_opt =
        eval->add_option("--gamma", eval_args.gamma, "best margin, enables margin_ratio");
    eval->add_flag("--gamma-from-lp", eval_args.gamma_from_lp,
                   "solve the margin LP to get gamma");
    auto* eval_seed_opt =
        eval->add_option("--eval-seed", eval_args.eval_seed,
                         "Monte Carlo seed (default: the instance seed)");
    eval->add_option("--out", eval_args.out, "metrics CSV path (default: stdout)");

    ExperimentArgs exp_args;
    auto* expr = app.add_subcommand("experiment", "run an experiment plan");
    expr->add_option("--plan", exp_args.plan, "builtin plan name or plan file path")->required();
    expr->add_option("--scale", exp_args.scale, "multiply every n by this factor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    expr->add_option("--workers", exp_args.workers, "worker thread count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    expr->add_option("--out", exp_args.out, "results CSV path")->required();
    expr->add_option("--summary", exp_args.summary, "also write a per-cell summary CSV");
    expr->add_flag("--timing", exp_args.timing,
                   "record wall times (off by default; breaks byte reproducibility)");
    expr->add_flag("--progress", exp_args.progress, "print per-cell progress to stderr");

    PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "render a results CSV to an SVG panel");
    plot->add_option("--in", plot_args.in, "results CSV path")->required();
    plot->add_option("--panel", plot_args.panel, "panel name (matches the builtin plan names)")
        ->required();
    plot->add_option("--out", plot_args.out, "SVG output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    gen_args.dof_set = gen_dof->count() > 0;
    eval_args.dof_set = eval_dof->count() > 0;
    eval_args.gamma_set = gamma_opt->count() > 0;
    eval_args.eval_seed_set = eval_seed_opt->count() > 0;

    try {
        if (gen->parsed()) return run_gen(gen_args);
        if (fitb->parsed()) return run_fit_adaboost(boost_args);
        if (fitl->parsed()) return run_fit_lp(lp_args);
        if (eval->parsed()) return run_eval(eval_args);
        if (expr->parsed()) return run_experiment(exp_args);
        if (plot->parsed()) return run_plot(plot_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
