#pragma once

#include <iosfwd>
#include <string>

#include "eihlab_cli/config.hpp"

namespace eihlab::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3, kIo = 4 };

int exit_code_for(Verdict v);

/// Each command renders its output to a string and hands it to emit().
/// Return value is the process exit code.
int cmd_price(const RunConfig& config);
int cmd_thresholds(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
int cmd_hedge(const RunConfig& config);
int cmd_verify(const RunConfig& config);
/// kind is one of convergence, hedging, lemma.
int cmd_table(const RunConfig& config, const std::string& kind);

std::string render_price(const RunConfig& config);
std::string render_thresholds(const RunConfig& config);
std::string render_simulate(const RunConfig& config);
std::string render_hedge(const RunConfig& config);
/// Convergence tables report their width slopes on `diagnostics` when given.
std::string render_table(const RunConfig& config, const std::string& kind, std::ostream* diagnostics = nullptr);

} // namespace eihlab::cli
