#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alphaduplex/cli.hpp"
#include "alphaduplex/config.hpp"
#include "doctest.h"

using namespace alphaduplex;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

RunConfig config_in(const std::string& dir, const std::string& text = "") {
    RunConfig c = parse_config(text);
    c.out_dir = (fs::current_path() / "cli_unit" / dir).string();
    fs::remove_all(c.out_dir);
    return c;
}

int run(const std::string& cmd, const RunConfig& c, std::string* err_text = nullptr) {
    std::ostringstream log, err;
    const int status = cli::run_command(cmd, c, log, err);
    if (err_text) *err_text = err.str();
    return status;
}

}  // namespace

TEST_CASE("factors with identical pulses give equal columns") {
    const RunConfig c = config_in("factors_same", "[pulses]\ndownlink = tri\nuplink = tri\n[sweep]\nalpha_grid = 0:1:0.05");
    REQUIRE(run("factors", c) == cli::kOk);
    const auto rows = read_csv(fs::path(c.out_dir) / "factors.csv");
    REQUIRE(rows.size() == 22);
    CHECK(rows[0] == std::vector<std::string>{"alpha", "i_du_sq", "i_ud_sq"});
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][1]) == doctest::Approx(std::stod(rows[i][2])).epsilon(1e-9));
}

TEST_CASE("analytic at alpha = 0 is byte-identical across runs") {
    RunConfig c = config_in("analytic_a");
    c.alpha_grid = std::vector<double>{0.0};
    REQUIRE(run("analytic", c) == cli::kOk);
    RunConfig d = c;
    d.out_dir = config_in("analytic_b").out_dir;
    REQUIRE(run("analytic", d) == cli::kOk);
    const auto a = slurp(fs::path(c.out_dir) / "analytic.csv");
    CHECK(a == slurp(fs::path(d.out_dir) / "analytic.csv"));
    const auto rows = read_csv(fs::path(c.out_dir) / "analytic.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"direction", "alpha", "ber", "bandwidth_hz", "throughput_bps"});
    CHECK(rows[1][0] == "uplink");
    CHECK(rows[2][0] == "downlink");
}

TEST_CASE("simulate writes a deterministic campaign") {
    RunConfig c = config_in("sim_a", "[sim]\nrealizations = 3\n[sweep]\nalpha_grid = 0:1:0.5");
    REQUIRE(run("simulate", c) == cli::kOk);
    RunConfig d = c;
    d.out_dir = config_in("sim_b").out_dir;
    REQUIRE(run("simulate", d) == cli::kOk);
    CHECK(slurp(fs::path(c.out_dir) / "simulate.csv") == slurp(fs::path(d.out_dir) / "simulate.csv"));
    const auto rows = read_csv(fs::path(c.out_dir) / "simulate.csv");
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].size() == 7);
    CHECK(rows[0][4] == "n_links");
}

TEST_CASE("sweep writes curves and operating points") {
    const RunConfig c = config_in("sweep", "[sweep]\nalpha_grid = 0:1:0.02");
    REQUIRE(run("sweep", c) == cli::kOk);
    const auto rows = read_csv(fs::path(c.out_dir) / "sweep.csv");
    CHECK(rows[0] == std::vector<std::string>{"alpha", "t_ul", "t_dl", "ber_ul", "ber_dl"});
    CHECK(rows.size() == 52);
    const std::string points = slurp(fs::path(c.out_dir) / "operating_points.txt");
    CHECK(points.find("balanced_alpha=0.2") != std::string::npos);
    CHECK(points.find("fd_dl_delta_pct=") != std::string::npos);
}

TEST_CASE("validate with defaults passes at 100 realizations") {
    const RunConfig c = config_in("validate", "[sim]\nrealizations = 100");
    std::string err;
    CHECK(run("validate", c, &err) == cli::kOk);
    CHECK(err.empty());
    const std::string summary = slurp(fs::path(c.out_dir) / "validate.txt");
    CHECK(summary.find("pass=true") != std::string::npos);
    CHECK(read_csv(fs::path(c.out_dir) / "validate.csv").size() == 13);
}

TEST_CASE("failing validation has its own status") {
    // A 1 m core window holds no links, which can never validate.
    RunConfig c = config_in("validate_fail", "[sim]\nrealizations = 2\nregion_side = 2 km\ncore_side = 1 m");
    c.alpha_grid = std::vector<double>{0.0};
    std::string err;
    CHECK(run("validate", c, &err) == cli::kValidationFailed);
    CHECK(err.rfind("error: kind=validation", 0) == 0);
}

TEST_CASE("error statuses are distinct") {
    std::string err;
    RunConfig starve = config_in("starve", "[sim]\ncandidate_cap = 1\nrealizations = 1");
    CHECK(run("simulate", starve, &err) == cli::kStarvation);
    CHECK(err.rfind("error: kind=starvation", 0) == 0);

    RunConfig none = config_in("nocross", "[sweep]\nalpha_grid = 0:0.1:0.1");
    CHECK(run("sweep", none, &err) == cli::kNoCrossing);
    CHECK(err.rfind("error: kind=no_crossing", 0) == 0);

    CHECK(run("bogus", none, &err) == cli::kConfig);
    CHECK(err.rfind("error: kind=config", 0) == 0);

    CHECK(cli::kQuadrature != cli::kConfig);
    CHECK(cli::error_line("domain", "say \"hi\"") == "error: kind=domain message=\"say \\\"hi\\\"\"");
}
