#pragma once

// Batch subcommands. Each writes its CSV/summary files into cfg.out_dir and
// returns a process exit status; run_command maps library errors onto
// distinct statuses and prints one machine-readable line on `err`:
//   error: kind=<config|quadrature|starvation|validation|no_crossing|domain|internal> message="..."

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "alphaduplex/config.hpp"

namespace alphaduplex::cli {

enum ExitStatus : int {
    kOk = 0,
    kInternal = 1,
    kConfig = 2,
    kQuadrature = 3,
    kStarvation = 4,
    kValidationFailed = 5,
    kNoCrossing = 6,
    kDomain = 7,
};

/// cfg.alpha_grid when set, else 0:1:0.01 (factors, analytic, sweep).
std::vector<double> curve_grid(const RunConfig& cfg);
/// cfg.alpha_grid when set, else 0:1:0.2 (simulate, validate).
std::vector<double> validation_grid(const RunConfig& cfg);

int cmd_factors(const RunConfig& cfg, std::ostream& log);
int cmd_analytic(const RunConfig& cfg, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);
int cmd_validate(const RunConfig& cfg, std::ostream& log);

/// Runs `command` (factors | analytic | simulate | sweep | validate).
int run_command(std::string_view command, const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// The error line written by run_command.
std::string error_line(std::string_view kind, std::string_view message);

}  // namespace alphaduplex::cli
