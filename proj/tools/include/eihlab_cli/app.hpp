#pragma once

namespace eihlab::cli {

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

} // namespace eihlab::cli
