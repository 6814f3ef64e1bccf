#include "eihlab_cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "eihlab/analytic.hpp"
#include "eihlab/normal.hpp"
#include "eihlab/strategies.hpp"
#include "eihlab_cli/report_io.hpp"

namespace eihlab::cli {

namespace {

constexpr std::size_t kSimulateDefaultPaths = 10;
constexpr std::size_t kHedgeDefaultPaths = 1;
constexpr std::size_t kHedgingTableDefaultPaths = 10'000;
constexpr std::size_t kLemmaDefaultDraws = 100'000;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json thresholds_json(const ThresholdPair& t) {
    return {{"a", t.a}, {"b", t.b}, {"log_a", t.log_a}, {"log_b", t.log_b}};
}

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw UsageError("delta must lie in (0, 1)");
}

std::vector<std::size_t> to_counts(const std::vector<double>& xs, const char* what) {
    std::vector<std::size_t> out;
    for (const double x : xs) {
        if (!(x >= 1.0) || x != std::floor(x)) {
            throw UsageError(std::string(what) + ": expected positive integers");
        }
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

} // namespace

int exit_code_for(Verdict v) {
    switch (v) {
    case Verdict::pass: return kPass;
    case Verdict::fail: return kFail;
    case Verdict::inconclusive: return kInconclusive;
    }
    return kFail;
}

std::string render_price(const RunConfig& config) {
    const MarketParams params = config.market();
    check_delta(config.delta);
    const ReducedParams reduced = reduce_dimension(params);
    const ThresholdPair t = thresholds(reduced, params.T(), config.delta);
    Json components = Json::array();
    double total = 0.0;
    for (const auto& spec : {DigitalSpec::create(Direction::at_most, t.a), DigitalSpec::create(Direction::at_least, t.b)}) {
        const double price = digital_price(reduced, spec, params.T());
        total += price;
        components.push_back(
            {{"direction", std::string(to_string(spec.direction))}, {"threshold", spec.threshold}, {"price", price}});
    }
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "price";
    j["delta"] = config.delta;
    j["T"] = params.T();
    j["ratio_vol"] = reduced.ratio_vol();
    j["thresholds"] = thresholds_json(t);
    j["components"] = std::move(components);
    j["total_price"] = total;
    return dump(j);
}

std::string render_thresholds(const RunConfig& config) {
    const MarketParams params = config.market();
    check_delta(config.delta);
    const ReducedParams reduced = reduce_dimension(params);
    const double s = reduced.ratio_vol();
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "thresholds";
    j["delta"] = config.delta;
    j["T"] = params.T();
    j["ratio_vol"] = s;
    j["two_sided"] = thresholds_json(thresholds(reduced, params.T(), config.delta));
    j["one_sided"] = thresholds_json(threshold_pair(s, params.T(), upper_quantile(config.delta).finite()));
    return dump(j);
}

std::string render_simulate(const RunConfig& config) {
    const MarketParams params = config.market();
    const std::size_t n = config.n_paths.value_or(kSimulateDefaultPaths);
    if (config.n_steps < 1) throw UsageError("n_steps must be >= 1");
    std::ostringstream out;
    Table table;
    table.columns = {"path", "step", "t", "index", "stock"};
    for (std::size_t k = 0; k < n; ++k) {
        const PathSample path = simulate_path(params, config.measure, config.n_steps, config.seed, k);
        for (std::size_t j = 0; j < path.times.size(); ++j) {
            table.rows.push_back({static_cast<double>(k), static_cast<double>(j), path.times[j], path.index_values[j],
                                  path.stock_values[j]});
        }
    }
    write_csv(out, table);
    return out.str();
}

std::string render_hedge(const RunConfig& config) {
    const MarketParams params = config.market();
    check_delta(config.delta);
    if (config.n_steps < 2) throw UsageError("hedge needs n_steps >= 2");
    const std::size_t n = config.n_paths.value_or(kHedgeDefaultPaths);
    const PrudentStrategy strategy = build_two_sided(params, config.delta);
    const double cutoff = params.T() - params.T() / static_cast<double>(config.n_steps);
    Table table;
    table.columns = {"path", "t", "index", "stock", "analytic_wealth", "hedged_wealth"};
    for (std::size_t k = 0; k < n; ++k) {
        const PathSample path = simulate_path(params, config.measure, config.n_steps, config.seed, k);
        const WealthTrack track = track_wealth(strategy, params, path, cutoff);
        for (std::size_t j = 0; j < track.times.size(); ++j) {
            table.rows.push_back({static_cast<double>(k), track.times[j], path.index_values[j], path.stock_values[j],
                                  track.analytic_wealth[j], track.hedged_wealth[j]});
        }
    }
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

std::string render_table(const RunConfig& config, const std::string& kind, std::ostream* diagnostics) {
    std::ostringstream out;
    if (kind == "convergence") {
        const std::vector<double> grid = config.t_grid.value_or(std::vector<double>{1, 2, 5, 10, 20, 50, 100});
        if (grid.empty()) throw UsageError("table.t_grid is empty");
        const MarketParams params = config.market();
        check_delta(config.delta);
        ConvergenceStudy study;
        try {
            study = capm_convergence_study(params, config.delta, config.eps, grid,
                                           config.n_paths.value_or(1'000'000), config.seed, config.workers);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        write_csv(out, study.table);
        for (std::size_t k = 0; diagnostics != nullptr && k < study.width_slopes.size(); ++k) {
            *diagnostics << "width slope " << study.table.columns[k + 1] << ": " << format_real(study.width_slopes[k])
                      << '\n';
        }
    } else if (kind == "hedging") {
        ExperimentConfig cfg = config.experiment(kHedgingTableDefaultPaths);
        const std::vector<std::size_t> steps =
            config.hedge_steps ? to_counts(*config.hedge_steps, "table.steps") : std::vector<std::size_t>{64, 128, 256, 512};
        try {
            write_csv(out, hedging_fidelity_study(cfg, steps));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else if (kind == "lemma") {
        try {
            write_csv(out, lemma_crosscheck(config.lemma_trials, config.seed, config.n_paths.value_or(kLemmaDefaultDraws),
                                            config.workers));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    } else {
        throw UsageError("unknown table kind '" + kind + "' (expected convergence, hedging or lemma)");
    }
    return out.str();
}

int cmd_price(const RunConfig& config) {
    emit(config.out, render_price(config));
    return kPass;
}

int cmd_thresholds(const RunConfig& config) {
    emit(config.out, render_thresholds(config));
    return kPass;
}

int cmd_simulate(const RunConfig& config) {
    emit(config.out, render_simulate(config));
    return kPass;
}

int cmd_hedge(const RunConfig& config) {
    emit(config.out, render_hedge(config));
    return kPass;
}

int cmd_verify(const RunConfig& config) {
    const ExperimentConfig cfg = config.experiment();
    ExperimentReport report;
    try {
        report = run_experiment(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    emit(config.out, dump(to_json(report, config.timing)));
    std::cerr << to_string(report.proposition) << ": " << to_string(report.verdict) << '\n';
    return exit_code_for(report.verdict);
}

int cmd_table(const RunConfig& config, const std::string& kind) {
    emit(config.out, render_table(config, kind, &std::cerr));
    return kPass;
}

} // namespace eihlab::cli
