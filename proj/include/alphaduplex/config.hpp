#pragma once

// Flat key = value run configuration with optional [params], [sim], [pulses],
// [sweep] and [validate] sections. Keys are unique across sections, so a
// section header only has to match the key's home section when present.
// Dimensional values carry explicit units:
//   lambda        /km2 | /m2
//   rho, p_b, p_u_max  dBm | W | mW
//   n0            dBm | dBm/Hz | W/Hz
//   b_u, b_d      MHz | kHz | Hz
//   region_side, core_side  km | m
//   beta          dB, or a bare linear ratio
// See docs/config.md for the full key list and defaults.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alphaduplex/model.hpp"
#include "alphaduplex/montecarlo.hpp"
#include "alphaduplex/pulse.hpp"
#include "alphaduplex/sweep.hpp"

namespace alphaduplex {

struct RunConfig {
    SystemParams params = default_params();
    SimConfig sim;
    PulsePair pulses;
    std::optional<std::vector<double>> alpha_grid;  // unset: per-command default
    std::string out_dir = ".";
    Source sweep_source = Source::Analytic;
    double refine_tol = 1e-6;
    double validate_tol = 0.02;

    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError naming the offending key (or line) on any parse or
/// validation failure, including unknown keys.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// "start:stop:step" -> grid; ConfigError keyed "alpha_grid" on bad input.
std::vector<double> parse_alpha_grid(std::string_view text);

}  // namespace alphaduplex
