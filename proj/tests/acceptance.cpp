// Acceptance checks, one per command-line argument 1..10 (default all).
// Each prints exactly one PASS/FAIL line; the exit code is nonzero when
// any selected check fails. Tolerances are pinned here, in code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mbcs/adaboost.hpp"
#include "mbcs/core.hpp"
#include "mbcs/datagen.hpp"
#include "mbcs/harness.hpp"
#include "mbcs/io.hpp"
#include "mbcs/lpmargin.hpp"
#include "mbcs/metrics.hpp"
#include "mbcs/oracle.hpp"
#include "mbcs/rng.hpp"
#include "mbcs/svgplot.hpp"

namespace {

using namespace mbcs;

Instance gen_gaussian(std::size_t n, std::size_t p, std::size_t s, std::size_t k,
                      std::uint64_t seed) {
    GenSpec spec;
    spec.n = n;
    spec.p = p;
    spec.s = s;
    spec.n_corrupt = k;
    spec.distribution = FeatureDistribution::gaussian();
    spec.master_seed = seed;
    return generate_instance(spec);
}

bool report(int criterion, bool ok, const std::string& detail) {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL") << " — " << detail
              << "\n";
    return ok;
}

// 100 separable Gaussian instances: the primal-dual certificate must be
// exact to the pinned tolerances on every one.
bool criterion_1() {
    constexpr double kComplementarity = 1e-8;
    constexpr double kGapScale = 1e-6;
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 5 + (95 * static_cast<std::size_t>(i)) / 99;
        Instance inst = gen_gaussian(n, 10 * n, 5, 0, 1000 + static_cast<std::uint64_t>(i));
        LpSolution sol = solve_max_margin(inst);
        if (sol.status != LpSolution::Status::optimal)
            return report(1, false,
                          "instance " + std::to_string(i) + " (n=" + std::to_string(n) +
                              ") ended " + lp_status_name(sol.status));
        const double complementarity =
            std::abs(sol.margin * l1_norm(sol.beta_hat) - 1.0);
        if (complementarity > kComplementarity)
            return report(1, false,
                          "margin-times-norm drift " + format_double(complementarity) +
                              " on instance " + std::to_string(i));
        if (sol.duality_gap > kGapScale * std::max(1.0, sol.margin))
            return report(1, false,
                          "duality gap " + format_double(sol.duality_gap) + " on instance " +
                              std::to_string(i));
        ++checked;
    }
    return report(1, true,
                  "strong duality held on " + std::to_string(checked) +
                      " separable instances (|margin*norm-1| <= 1e-8, gap <= 1e-6*max(1,margin))");
}

// 200 two-dimensional instances against the grid-search oracle.
bool criterion_2() {
    constexpr double kTol = 1e-3;
    constexpr std::uint64_t kGrid = 100000;
    const FeatureDistribution dists[] = {
        FeatureDistribution::gaussian(),  FeatureDistribution::student_t(3),
        FeatureDistribution::uniform(),   FeatureDistribution::laplace(),
        FeatureDistribution::rademacher()};
    int compared = 0;
    for (int i = 0; i < 200; ++i) {
        GenSpec spec;
        spec.n = 1 + static_cast<std::size_t>(i) % 3;
        spec.p = 2;
        spec.s = 1 + static_cast<std::size_t>(i) % 2;
        spec.distribution = dists[i % 5];
        spec.master_seed = 2000 + static_cast<std::uint64_t>(i);
        Instance inst = generate_instance(spec);
        LpSolution sol = solve_max_margin(inst);
        const double oracle = brute_force_margin(inst, kGrid);
        if (sol.status == LpSolution::Status::optimal) {
            if (std::abs(sol.margin - oracle) > kTol)
                return report(2, false,
                              "instance " + std::to_string(i) + ": lp " +
                                  format_double(sol.margin) + " vs grid " +
                                  format_double(oracle));
            ++compared;
        } else if (oracle > 1e-6) {
            return report(2, false,
                          "instance " + std::to_string(i) +
                              " not certified optimal yet the grid found margin " +
                              format_double(oracle));
        }
    }
    return report(2, true,
                  "lp margin matched the grid oracle within 1e-3 on " +
                      std::to_string(compared) + " separable instances of 200");
}

struct MarginRun {
    Instance instance;
    LpSolution lp;
    Model model;
    Trajectory trajectory;
    double ratio = 0.0;
};

// Shared protocol for criteria 3, 4, and 8: twenty seeded runs at
// n=100, p=1000, s=5, no corruptions, learning rate 1/6, iteration count
// from the sample-size rule.
MarginRun margin_run(std::uint64_t seed, std::uint64_t record_every) {
    MarginRun run{gen_gaussian(100, 1000, 5, 0, seed), {}, {}, {}, 0.0};
    run.lp = solve_max_margin(run.instance);
    if (run.lp.status != LpSolution::Status::optimal)
        throw std::runtime_error("margin run: lp not optimal at seed " + std::to_string(seed));

    BoostConfig config;
    config.learning_rate = 1.0 / 6.0;
    config.max_iterations = iterations_rule(100, 5, 0, 1000, 1.0 / 6.0);
    config.record_every = record_every;
    auto fitted = run_adaboost(run.instance, config);
    run.model = std::move(fitted.first);
    run.trajectory = std::move(fitted.second);
    run.ratio = run.model.degenerate
                    ? 0.0
                    : l1_margin(run.instance, run.model.coefficients) / run.lp.margin;
    return run;
}

constexpr std::uint64_t kMarginSeedBase = 3000;

bool criterion_3() {
    constexpr double kRatioFloor = 0.5;
    constexpr int kNeeded = 19;
    const std::uint64_t iterations = iterations_rule(100, 5, 0, 1000, 1.0 / 6.0);
    int hits = 0;
    double worst = 1e9;
    for (int i = 0; i < 20; ++i) {
        MarginRun run = margin_run(kMarginSeedBase + static_cast<std::uint64_t>(i), iterations);
        if (run.ratio >= kRatioFloor) ++hits;
        worst = std::min(worst, run.ratio);
    }
    return report(3, hits >= kNeeded,
                  std::to_string(hits) + "/20 runs reached margin ratio >= 0.5 after " +
                      std::to_string(iterations) + " iterations (worst " +
                      format_double(worst) + ")");
}

bool criterion_4() {
    const std::uint64_t iterations = iterations_rule(100, 5, 0, 1000, 1.0 / 6.0);
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
        MarginRun run = margin_run(kMarginSeedBase + static_cast<std::uint64_t>(i), iterations);
        if (!exhaustive_sign_check(run.instance, run.lp.beta_hat))
            return report(4, false, "lp output misses a training sign at run " +
                                        std::to_string(i));
        if (run.ratio > 0.0) {
            if (!exhaustive_sign_check(run.instance, run.model.coefficients))
                return report(4, false,
                              "boosted model misses a training sign at run " +
                                  std::to_string(i) + " despite ratio " +
                                  format_double(run.ratio));
            ++checked;
        }
    }
    return report(4, true,
                  "lp interpolated in all 20 runs; boosted model interpolated in all " +
                      std::to_string(checked) + " positive-ratio runs");
}

ExperimentPlan lp_rate_plan() {
    ExperimentPlan plan;
    plan.name = "rate-check";
    plan.distributions = {FeatureDistribution::Kind::gaussian};
    plan.n_grid = {100, 200, 400};
    plan.corrupt_grid = {0};
    plan.replications = 20;
    plan.with_adaboost = false;
    plan.with_lp = true;
    plan.master_seed = 41;
    plan.normalize();
    return plan;
}

std::vector<double> cell_medians(const ResultTable& table, const std::string& metric) {
    auto cells = summarize(table);
    std::vector<double> medians;
    for (const auto& cell : cells)
        medians.push_back(metric == "margin" ? cell.margin.median
                                             : cell.prediction_error.median);
    return medians;
}

double loglog_slope(const std::vector<std::size_t>& ns, const std::vector<double>& ys) {
    const std::size_t k = ns.size();
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs(k);
    for (std::size_t i = 0; i < k; ++i) {
        xs[i] = std::log(static_cast<double>(ns[i]));
        sx += xs[i];
        sy += std::log(ys[i]);
    }
    const double mx = sx / static_cast<double>(k);
    const double my = sy / static_cast<double>(k);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        num += (xs[i] - mx) * (std::log(ys[i]) - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

bool criterion_5() {
    constexpr double kSlopeLo = -0.70;
    constexpr double kSlopeHi = -0.15;
    ResultTable table = run_plan(lp_rate_plan());
    if (!table.all_ok()) return report(5, false, "a replication failed");
    const std::vector<double> medians = cell_medians(table, "prediction_error");
    if (medians.size() != 3) return report(5, false, "expected 3 cells");
    for (std::size_t i = 1; i < medians.size(); ++i)
        if (!(medians[i] < medians[i - 1]))
            return report(5, false,
                          "median error not strictly decreasing: " + format_double(medians[0]) +
                              ", " + format_double(medians[1]) + ", " +
                              format_double(medians[2]));
    const double slope = loglog_slope({100, 200, 400}, medians);
    return report(5, slope >= kSlopeLo && slope <= kSlopeHi,
                  "median errors " + format_double(medians[0]) + " > " +
                      format_double(medians[1]) + " > " + format_double(medians[2]) +
                      "; log-log slope " + format_double(slope) + " within [-0.70, -0.15]");
}

bool criterion_6() {
    constexpr double kSlopeLo = -0.60;
    constexpr double kSlopeHi = -0.15;
    ResultTable table = run_plan(lp_rate_plan());
    if (!table.all_ok()) return report(6, false, "a replication failed");
    const std::vector<double> medians = cell_medians(table, "margin");
    for (std::size_t i = 1; i < medians.size(); ++i)
        if (!(medians[i] < medians[i - 1]))
            return report(6, false, "median margin not strictly decreasing");
    const double slope = loglog_slope({100, 200, 400}, medians);
    return report(6, slope >= kSlopeLo && slope <= kSlopeHi,
                  "median margins " + format_double(medians[0]) + " > " +
                      format_double(medians[1]) + " > " + format_double(medians[2]) +
                      "; log-log slope " + format_double(slope) + " within [-0.60, -0.15]");
}

bool criterion_7() {
    ExperimentPlan plan;
    plan.name = "noise-check";
    plan.distributions = {FeatureDistribution::Kind::gaussian};
    plan.n_grid = {200};
    plan.corrupt_grid = {0, 10, 20, 40};
    plan.replications = 20;
    plan.with_adaboost = false;
    plan.with_lp = true;
    plan.master_seed = 42;
    plan.normalize();

    ResultTable table = run_plan(plan);
    if (!table.all_ok()) return report(7, false, "a replication failed");
    auto cells = summarize(table);
    if (cells.size() != 4) return report(7, false, "expected 4 corruption cells");

    std::string shown;
    double prev = -1.0;
    for (const auto& cell : cells) {
        const double median = cell.prediction_error.median;
        if (!shown.empty()) shown += ", ";
        shown += std::to_string(cell.n_corrupt) + ":" + format_double(median);
        if (median >= 0.5)
            return report(7, false, "median error " + format_double(median) + " at " +
                                        std::to_string(cell.n_corrupt) + " corruptions");
        if (median < prev - 1e-12)
            return report(7, false, "median error decreased with more corruptions (" + shown +
                                        ")");
        prev = median;
    }
    return report(7, true, "median error nondecreasing in the corruption count (" + shown +
                               "), all below 0.5");
}

bool criterion_8() {
    constexpr double kLossSlack = 1e-12;
    constexpr double kAlphaCap = 1.0 + 1e-12;
    std::uint64_t iterations_checked = 0;
    for (int i = 0; i < 20; ++i) {
        MarginRun run = margin_run(kMarginSeedBase + static_cast<std::uint64_t>(i), 1);
        double prev = 1.0;  // loss of the zero vector
        for (const auto& rec : run.trajectory.records) {
            if (rec.loss > prev + kLossSlack)
                return report(8, false,
                              "loss rose from " + format_double(prev) + " to " +
                                  format_double(rec.loss) + " at iteration " +
                                  std::to_string(rec.t) + " of run " + std::to_string(i));
            if (std::abs(rec.alpha) > kAlphaCap)
                return report(8, false, "stepsize " + format_double(rec.alpha) +
                                            " exceeded one at iteration " +
                                            std::to_string(rec.t));
            prev = rec.loss;
            ++iterations_checked;
        }
    }
    return report(8, true,
                  "loss nonincreasing and |stepsize| <= 1 across " +
                      std::to_string(iterations_checked) + " recorded iterations");
}

bool criterion_9() {
    constexpr std::uint64_t kSamples = 100000;
    RandomStream dirs = derive_stream(4000, StreamPurpose::evaluation);
    double worst_sigma = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t p = 20;
        std::vector<double> truth(p), beta(p);
        for (double& x : truth) x = dirs.gaussian();
        const double norm = l2_norm(truth);
        for (double& x : truth) x /= norm;
        for (double& x : beta) x = dirs.gaussian();

        const double exact = prediction_error_gaussian(beta, truth);
        RandomStream mc_stream =
            derive_stream(4100 + static_cast<std::uint64_t>(i), StreamPurpose::evaluation);
        const McError mc = prediction_error_mc(beta, truth, FeatureDistribution::gaussian(),
                                               false, kSamples, mc_stream);
        const double sigmas = std::abs(mc.estimate - exact) / std::max(mc.std_error, 1e-12);
        worst_sigma = std::max(worst_sigma, sigmas);
        if (std::abs(mc.estimate - exact) > 4.0 * mc.std_error)
            return report(9, false,
                          "direction " + std::to_string(i) + ": monte carlo " +
                              format_double(mc.estimate) + " vs closed form " +
                              format_double(exact) + " (" + format_double(sigmas) + " sigma)");
    }
    return report(9, true,
                  "50 directions agreed within four standard errors (worst " +
                      format_double(worst_sigma) + " sigma)");
}

bool criterion_10() {
    ExperimentPlan plan = builtin_plan("smoke");
    RunOptions serial;
    RunOptions pooled;
    pooled.workers = 3;

    std::string csv[3];
    std::string svg[3];
    const RunOptions options[3] = {serial, serial, pooled};
    for (int round = 0; round < 3; ++round) {
        ResultTable table = run_plan(plan, options[round]);
        std::stringstream buf;
        write_results_csv(table, buf);
        csv[round] = buf.str();
        svg[round] = render_plot(table, panel_spec("smoke"));
    }
    const bool csv_ok = csv[0] == csv[1] && csv[0] == csv[2];
    const bool svg_ok = svg[0] == svg[1] && svg[0] == svg[2];
    return report(10, csv_ok && svg_ok,
                  std::string("smoke plan artifacts ") +
                      (csv_ok && svg_ok ? "byte-identical across reruns and worker counts"
                                        : (csv_ok ? "csv stable but svg diverged"
                                                  : "csv diverged")));
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    if (argc > 1) {
        try {
            const int c = std::stoi(argv[1]);
            if (c < 1 || c > 10) throw std::out_of_range("criterion");
            selected.push_back(c);
        } catch (const std::exception&) {
            std::cerr << "usage: acceptance [1-10]\n";
            return 2;
        }
    } else {
        for (int c = 1; c <= 10; ++c) selected.push_back(c);
    }

    bool all_ok = true;
    for (const int c : selected) {
        bool ok = false;
        try {
            switch (c) {
                case 1: ok = criterion_1(); break;
                case 2: ok = criterion_2(); break;
                case 3: ok = criterion_3(); break;
                case 4: ok = criterion_4(); break;
                case 5: ok = criterion_5(); break;
                case 6: ok = criterion_6(); break;
                case 7: ok = criterion_7(); break;
                case 8: ok = criterion_8(); break;
                case 9: ok = criterion_9(); break;
                case 10: ok = criterion_10(); break;
            }
        } catch (const std::exception& e) {
            std::cout << "criterion " << c << ": FAIL — unhandled error: " << e.what() << "\n";
            ok = false;
        }
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
