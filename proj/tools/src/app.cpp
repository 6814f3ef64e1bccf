#include "eihlab_cli/app.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eihlab_cli/commands.hpp"

namespace eihlab::cli {

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> seed;
    std::optional<std::size_t> paths;
    std::optional<std::size_t> steps;
    std::optional<double> delta;
    std::optional<double> eps;
    std::optional<std::string> prop;
    std::optional<std::string> out;
    std::optional<std::string> measure;
    std::optional<std::size_t> workers;
    bool timing = false;
};

// Precedence: flag > EIHLAB_SEED > config file > default.
RunConfig resolve(const Flags& f) {
    RunConfig config = f.config ? load_config_file(*f.config) : RunConfig{};
    if (const char* env = std::getenv("EIHLAB_SEED"); env != nullptr && *env != '\0') {
        config.seed = parse_u64(env, "EIHLAB_SEED");
    }
    if (f.seed) config.seed = parse_u64(*f.seed, "--seed");
    if (f.paths) config.n_paths = *f.paths;
    if (f.steps) config.n_steps = *f.steps;
    if (f.delta) config.delta = *f.delta;
    if (f.eps) config.eps = *f.eps;
    if (f.prop) {
        try {
            config.proposition = parse_proposition(*f.prop);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (f.measure) {
        try {
            config.measure = parse_measure(*f.measure);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (f.out) config.out = *f.out;
    if (f.workers) config.workers = *f.workers;
    config.timing = f.timing;
    return config;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"Monte Carlo lab for digital exchange claims and prudent strategies"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags f;
    app.add_option("--config", f.config, "Flat key = value config file");
    app.add_option("--seed", f.seed, "RNG seed (unsigned 64-bit)");
    app.add_option("--paths", f.paths, "Number of Monte Carlo paths");
    app.add_option("--steps", f.steps, "Time steps per path");
    app.add_option("--delta", f.delta, "Strategy initial wealth / event level");
    app.add_option("--eps", f.eps, "Guarantee level");
    app.add_option("--prop", f.prop, "two_sided, mu, mu_bis, index, capm1 or capm_final");
    app.add_option("--out", f.out, "Output file (default stdout)");
    app.add_option("--measure", f.measure, "physical or risk-neutral");
    app.add_option("--workers", f.workers, "Worker threads; results do not depend on it");
    app.add_flag("--timing", f.timing, "Include runtime_seconds in JSON reports");

    auto* price = app.add_subcommand("price", "Thresholds and component prices of the two-sided strategy");
    auto* thresholds = app.add_subcommand("thresholds", "Ratio thresholds for delta");
    auto* simulate = app.add_subcommand("simulate", "Sample paths as CSV");
    auto* hedge = app.add_subcommand("hedge", "Analytic and discretely hedged wealth along sample paths");
    auto* verify = app.add_subcommand("verify", "Run one proposition experiment and write a JSON report");
    auto* table = app.add_subcommand("table", "Write a study table as CSV");
    std::string table_kind;
    table->add_option("kind", table_kind, "convergence, hedging or lemma")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const RunConfig config = resolve(f);
        if (price->parsed()) return cmd_price(config);
        if (thresholds->parsed()) return cmd_thresholds(config);
        if (simulate->parsed()) return cmd_simulate(config);
        if (hedge->parsed()) return cmd_hedge(config);
        if (verify->parsed()) return cmd_verify(config);
        if (table->parsed()) return cmd_table(config, table_kind);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}

} // namespace eihlab::cli
