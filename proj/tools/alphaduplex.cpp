// alphaduplex: batch driver for the analytic and simulated evaluations.
//
//   alphaduplex <factors|analytic|simulate|sweep|validate> [--config PATH]
//               [--out DIR] [--seed N] [--alpha-grid start:stop:step]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "alphaduplex/cli.hpp"
#include "alphaduplex/config.hpp"
#include "alphaduplex/errors.hpp"

namespace ad = alphaduplex;

int main(int argc, char** argv) {
    CLI::App app{"alpha-duplex cellular network evaluator"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> alpha_grid;
    for (const char* name : {"factors", "analytic", "simulate", "sweep", "validate"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "simulation seed (overrides the config)");
        sub->add_option("--alpha-grid", alpha_grid, "start:stop:step");
    }
    app.get_subcommand("factors")->description("|I|^2 cross factors vs alpha");
    app.get_subcommand("analytic")->description("closed-form BER and throughput vs alpha");
    app.get_subcommand("simulate")->description("Monte Carlo BER and throughput vs alpha");
    app.get_subcommand("sweep")->description("throughput sweep with operating points");
    app.get_subcommand("validate")->description("analytic vs simulation agreement");

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    ad::RunConfig cfg;
    try {
        cfg = config_path.empty() ? ad::parse_config("") : ad::load_config(config_path);
        if (out_dir) cfg.out_dir = *out_dir;
        if (seed) cfg.sim.seed = *seed;
        if (alpha_grid) cfg.alpha_grid = ad::parse_alpha_grid(*alpha_grid);
    } catch (const ad::ConfigError& e) {
        std::cerr << ad::cli::error_line("config", e.what()) << '\n';
        return ad::cli::kConfig;
    }
    return ad::cli::run_command(command, cfg, std::cout, std::cerr);
}
