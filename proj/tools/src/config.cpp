#include "eihlab_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace eihlab::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::size_t parse_count(std::string_view text, std::string_view what) {
    return static_cast<std::size_t>(parse_u64(text, what));
}

} // namespace

double parse_real(std::string_view text, std::string_view what) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw UsageError(std::string(what) + ": expected a finite real, got '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
    text = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError(std::string(what) + ": expected an unsigned integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_real_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    text = trim(text);
    if (text.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_real(text.substr(start, comma - start), what));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
        if (!kv.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
            throw UsageError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }
    return kv;
}

void apply_key_values(RunConfig& config, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "market.mu_i") config.mu_i = parse_real(value, key);
        else if (key == "market.mu_s") config.mu_s = parse_real(value, key);
        else if (key == "market.sigma_i") config.sigma_i = parse_real_list(value, key);
        else if (key == "market.sigma_s") config.sigma_s = parse_real_list(value, key);
        else if (key == "market.r") config.r = parse_real(value, key);
        else if (key == "market.T") config.T = parse_real(value, key);
        else if (key == "run.seed") config.seed = parse_u64(value, key);
        else if (key == "run.n_paths") config.n_paths = parse_count(value, key);
        else if (key == "run.n_steps") config.n_steps = parse_count(value, key);
        else if (key == "run.delta") config.delta = parse_real(value, key);
        else if (key == "run.eps") config.eps = parse_real(value, key);
        else if (key == "run.workers") config.workers = parse_count(value, key);
        else if (key == "run.measure") {
            try {
                config.measure = parse_measure(value);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        } else if (key == "run.proposition") {
            try {
                config.proposition = parse_proposition(value);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        } else if (key == "table.t_grid") config.t_grid = parse_real_list(value, key);
        else if (key == "table.steps") config.hedge_steps = parse_real_list(value, key);
        else if (key == "table.lemma_trials") config.lemma_trials = parse_count(value, key);
        else throw UsageError("config: unknown key '" + key + "'");
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    RunConfig config;
    apply_key_values(config, parse_key_values(buffer.str()));
    return config;
}

MarketParams RunConfig::market() const {
    const auto need = [](const auto& field, const char* name) {
        if (!field) throw UsageError(std::string("config: missing required field ") + name);
        return *field;
    };
    try {
        return MarketParams::create(need(mu_i, "market.mu_i"), need(mu_s, "market.mu_s"),
                                    need(sigma_i, "market.sigma_i"), need(sigma_s, "market.sigma_s"),
                                    need(r, "market.r"), need(T, "market.T"));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ExperimentConfig RunConfig::experiment(std::size_t default_paths) const {
    ExperimentConfig cfg{market()};
    cfg.delta = delta;
    cfg.eps = eps;
    cfg.n_paths = n_paths.value_or(default_paths);
    cfg.seed = seed;
    cfg.proposition = proposition;
    cfg.n_steps = n_steps;
    cfg.measure = measure;
    cfg.workers = workers;
    return cfg;
}

} // namespace eihlab::cli
