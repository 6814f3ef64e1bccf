#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eihlab/experiments.hpp"
#include "eihlab/market_model.hpp"

namespace eihlab::cli {

/// Bad flags, malformed config or invalid parameters. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output. Maps to exit code 4.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<double> mu_i;
    std::optional<double> mu_s;
    std::optional<std::vector<double>> sigma_i;
    std::optional<std::vector<double>> sigma_s;
    std::optional<double> r;
    std::optional<double> T;

    std::uint64_t seed = kDefaultSeed;
    std::optional<std::size_t> n_paths;
    std::size_t n_steps = 256;
    double delta = 0.05;
    double eps = 0.05;
    Measure measure = Measure::physical;
    Proposition proposition = Proposition::two_sided;
    std::size_t workers = 1;

    std::optional<std::vector<double>> t_grid;
    std::optional<std::vector<double>> hedge_steps;
    std::size_t lemma_trials = 100;

    std::string out;
    bool timing = false;

    /// Throws UsageError naming the first missing or invalid market field.
    MarketParams market() const;
    ExperimentConfig experiment(std::size_t default_paths = 1'000'000) const;
};

/// Flat "key = value" text; '#' starts a comment. Throws UsageError on a
/// malformed line or a duplicate key.
std::map<std::string, std::string> parse_key_values(std::string_view text);

/// Applies parsed keys. Throws UsageError on unknown keys or bad values.
void apply_key_values(RunConfig& config, const std::map<std::string, std::string>& kv);

RunConfig load_config_file(const std::string& path);

double parse_real(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
/// Comma-separated finite reals; an empty string gives an empty list.
std::vector<double> parse_real_list(std::string_view text, std::string_view what);

} // namespace eihlab::cli
