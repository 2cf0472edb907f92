#pragma once

#include <optional>
#include <string>
#include <vector>

#include "problem.hpp"
#include "report.hpp"

namespace fockalg::cli {

/// Command-line overrides; unset members fall back to the problem file, then
/// to built-in defaults.
struct Options {
    std::optional<int> degree;
    std::optional<double> tol;
    std::optional<int> kmax;
    bool json = false;
    std::optional<std::string> out;
};

/// Truncation degree used when neither the flags nor the file set one.
[[nodiscard]] int default_degree(int n);

/// Runs one command ("pick check", "poisson c0", "caratheodory", ...).
/// Library errors propagate; run_cli maps them to exit codes.
[[nodiscard]] Report dispatch(const std::vector<std::string>& command, const ProblemFile& problem,
                              const Options& options);

/// Full command-line entry point: parses argv, runs, writes the report to
/// `out` (and to --out when given), returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fockalg::cli
