#include <string>

#include "alphaduplex/config.hpp"
#include "alphaduplex/errors.hpp"
#include "doctest.h"

using namespace alphaduplex;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("empty document gives defaults") {
    const RunConfig c = parse_config("");
    CHECK(c.params == default_params());
    CHECK(c.sim == SimConfig{});
    CHECK(c.pulses == PulsePair{});
    CHECK(!c.alpha_grid);
    CHECK(parse_config("# only a comment\n\n[params]\n") == c);
}

TEST_CASE("spelled-out defaults equal the defaults") {
    const RunConfig c = parse_config(R"(
[params]
rho = -70 dBm
p_b = 5 W
lambda = 3 /km2
p_u_max = 1 W
b_u = 1 MHz
b_d = 1000 kHz
beta = -80 dB
n0 = -90 dBm
eta = 4
omega1_u = 1
omega2_u = 1
omega1_d = 1
omega2_d = 1
modulation_order = 2
)");
    CHECK(c.params == default_params());
}

TEST_CASE("unit conversions") {
    CHECK(parse_config("rho = -70 dBm").params.rho == parse_config("rho = 1e-10 W").params.rho);
    CHECK(parse_config("rho = 1e-7 mW").params.rho == doctest::Approx(1e-10).epsilon(1e-15));
    CHECK(parse_config("lambda = 3e-6 /m2").params.lambda_bs == parse_config("lambda = 3 /km2").params.lambda_bs);
    CHECK(parse_config("n0 = 1e-12 W/Hz").params.n0 == parse_config("n0 = -90 dBm/Hz").params.n0);
    CHECK(parse_config("b_u = 2e6 Hz").params.b_u == 2e6);
    CHECK(parse_config("beta = 1e-8").params.beta == doctest::Approx(parse_config("beta = -80 dB").params.beta));
    CHECK(parse_config("[sim]\nregion_side = 20 km\ncore_side = 2000 m").sim == SimConfig{});
}

TEST_CASE("simulation, pulse and sweep keys") {
    const RunConfig c = parse_config(R"(
[sim]
realizations = 17
seed = 18446744073709551615
candidate_cap = 5000
[pulses]
downlink = tri
uplink = rect
[sweep]
alpha_grid = 0:0.5:0.25
refine_tol = 1e-8
source = montecarlo
out_dir = results
[validate]
tolerance = 0.03
)");
    CHECK(c.sim.n_realizations == 17);
    CHECK(c.sim.seed == 18446744073709551615ULL);
    CHECK(c.sim.candidate_cap == 5000);
    CHECK(c.pulses.downlink == PulseKind::Triangular);
    CHECK(c.pulses.uplink == PulseKind::Rectangular);
    REQUIRE(c.alpha_grid);
    CHECK(*c.alpha_grid == std::vector<double>{0.0, 0.25, 0.5});
    CHECK(c.refine_tol == 1e-8);
    CHECK(c.sweep_source == Source::MonteCarlo);
    CHECK(c.out_dir == "results");
    CHECK(c.validate_tol == 0.03);
}

TEST_CASE("validation errors name the key") {
    CHECK(error_of("eta = 1.5").find("eta") != std::string::npos);
    CHECK(error_of("rho = -70").find("rho") != std::string::npos);      // missing unit
    CHECK(error_of("rho = -70 dBW").find("rho") != std::string::npos);  // unknown unit
    CHECK(error_of("colour = blue").find("colour") != std::string::npos);
    CHECK(error_of("[sim]\nrho = 1 W").find("rho") != std::string::npos);  // wrong section
    CHECK(error_of("eta = 4\neta = 3").find("eta") != std::string::npos);
    CHECK(error_of("eta = four").find("eta") != std::string::npos);
    CHECK(error_of("realizations = 2.5").find("realizations") != std::string::npos);
    CHECK(error_of("downlink = gauss").find("downlink") != std::string::npos);
    CHECK(error_of("alpha_grid = 0:2:0.5").find("alpha_grid") != std::string::npos);
    CHECK(error_of("[nonsense]").find("nonsense") != std::string::npos);
    CHECK(error_of("just words").find("line 1") != std::string::npos);
    CHECK(error_of("[sim]\nrealizations = 0").find("realizations") != std::string::npos);
    CHECK(error_of("p_u_max = 1e-11 W").find("rho") != std::string::npos);
    CHECK_THROWS_AS(load_config("/nonexistent/path.ini"), ConfigError);
}

TEST_CASE("alpha grid text") {
    CHECK(parse_alpha_grid("0:1:0.5") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(parse_alpha_grid("0") == std::vector<double>{0.0});
    CHECK_THROWS_AS(parse_alpha_grid("0:1"), ConfigError);
    CHECK_THROWS_AS(parse_alpha_grid("a:b:c"), ConfigError);
    CHECK_THROWS_AS(parse_alpha_grid("0:1:-0.1"), ConfigError);
}
