#include "eihlab_cli/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eihlab_cli/config.hpp"

namespace eihlab::cli {

namespace {

Json interval_json(const stats::Interval& ci) { return Json::array({ci.lo, ci.hi}); }

Json optional_real(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

} // namespace

Json to_json(const ExperimentReport& report, bool include_timing) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["proposition"] = std::string(to_string(report.proposition));
    j["strategy"] = report.strategy;
    j["measure"] = std::string(to_string(report.measure));
    j["n_paths"] = report.n_paths;
    j["seed"] = report.seed;
    j["delta"] = report.delta;
    j["eps"] = report.eps;
    j["empirical_probability"] = report.empirical_probability;
    j["successes"] = report.successes;
    j["wilson_ci_95"] = interval_json(report.wilson_ci_95);
    j["target_kind"] = std::string(to_string(report.target_kind));
    j["theoretical_target"] =
        report.target_kind == TargetKind::none ? Json(nullptr) : Json(report.theoretical_target);
    j["derived_exact_probability"] = optional_real(report.derived_exact_probability);
    j["verdict"] = std::string(to_string(report.verdict));
    if (report.bound_report) {
        const auto& b = *report.bound_report;
        j["bound_report"] = {{"kind", std::string(to_string(b.kind))}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.holds}};
    } else {
        j["bound_report"] = nullptr;
    }
    j["dichotomy_violations"] = report.dichotomy_violations;
    j["beat_factor"] = report.beat_factor;
    Json estimates = Json::array();
    for (const auto& e : report.estimates) {
        estimates.push_back({{"name", e.name},
                             {"successes", e.successes},
                             {"trials", e.trials},
                             {"probability", e.probability},
                             {"wilson_ci_95", interval_json(e.wilson_ci_95)},
                             {"exact_probability", optional_real(e.exact_probability)}});
    }
    j["estimates"] = std::move(estimates);
    if (include_timing) j["runtime_seconds"] = report.runtime_seconds;
    return j;
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t k = 0; k < table.columns.size(); ++k) {
        if (k > 0) out << ',';
        out << table.columns[k];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out << ',';
            out << format_real(row[k]);
        }
        out << '\n';
    }
}

Table parse_csv(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (header) {
            table.columns = std::move(cells);
            header = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace eihlab::cli
