#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "eihlab/experiments.hpp"

namespace eihlab::cli {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// One object per experiment; runtime_seconds only when include_timing is set
/// so that repeated runs stay byte-identical.
Json to_json(const ExperimentReport& report, bool include_timing);

/// 17 significant digits; round-trips through strtod.
std::string format_real(double x);

/// Comma-separated, header row, LF line endings.
void write_csv(std::ostream& out, const Table& table);
Table parse_csv(const std::string& text);

/// Writes to `path`, or to stdout when path is empty. Throws IoError.
void emit(const std::string& path, const std::string& content);

} // namespace eihlab::cli
