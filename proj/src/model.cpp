#include "alphaduplex/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alphaduplex/errors.hpp"
#include "alphaduplex/specfun.hpp"

namespace alphaduplex {

using std::numbers::pi;

std::string_view to_string(Direction d) { return d == Direction::Uplink ? "uplink" : "downlink"; }

void SystemParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw DomainError(what);
    };
    require(eta > 2.0, "eta must be > 2");
    require(lambda_bs > 0.0 && std::isfinite(lambda_bs), "lambda_bs must be positive");
    require(rho > 0.0, "rho must be positive");
    require(p_b > 0.0, "p_b must be positive");
    require(p_u_max > 0.0, "p_u_max must be positive");
    require(rho <= p_u_max, "rho must not exceed p_u_max");
    require(beta >= 0.0 && beta <= 1.0, "beta must lie in [0, 1]");
    require(n0 > 0.0, "n0 must be positive");
    require(b_u > 0.0 && b_d > 0.0, "b_u and b_d must be positive");
    require(omega1_u > 0.0 && omega2_u > 0.0 && omega1_d > 0.0 && omega2_d > 0.0,
            "modulation constants must be positive");
    require(m_symbols >= 2, "m_symbols must be >= 2");
}

double SystemParams::max_serving_distance() const { return std::pow(p_u_max / rho, 1.0 / eta); }

double SystemParams::truncation_mass() const {
    const double r = max_serving_distance();
    return -std::expm1(-pi * lambda_bs * r * r);
}

double SystemParams::overlap_unit() const { return std::min(b_u, b_d); }

double SystemParams::bits_per_symbol() const { return std::log2(static_cast<double>(m_symbols)); }

SystemParams default_params() {
    SystemParams p{};
    p.lambda_bs = units::per_km2_to_per_m2(3.0);
    p.eta = 4.0;
    p.rho = units::dbm_to_watts(-70.0);
    p.p_b = 5.0;
    p.p_u_max = 1.0;
    p.beta = units::db_to_linear(-80.0);
    p.n0 = units::dbm_to_watts(-90.0);
    p.b_u = units::mhz_to_hz(1.0);
    p.b_d = units::mhz_to_hz(1.0);
    return p;
}

double distance_pdf(double r, const SystemParams& p) {
    if (r < 0.0 || r > p.max_serving_distance()) return 0.0;
    return 2.0 * pi * p.lambda_bs * r * std::exp(-pi * p.lambda_bs * r * r) / p.truncation_mass();
}

double uplink_power_moment(double a, const SystemParams& p) {
    if (!(a > 0.0)) throw DomainError("uplink_power_moment: order must be > 0");
    const double r = p.max_serving_distance();
    const double shape = a * p.eta / 2.0;
    const double mass = pi * p.lambda_bs * r * r;
    // rho^a gamma(a eta/2 + 1, mass) / ((pi lambda)^(a eta/2) (1 - e^-mass)), in logs
    // so that large P_u^max or tiny lambda do not overflow the pieces.
    const double log_value = a * std::log(p.rho) + std::log(specfun::lower_incomplete_gamma(shape + 1.0, mass)) -
                             shape * std::log(pi * p.lambda_bs) - std::log(p.truncation_mass());
    return std::exp(log_value);
}

}  // namespace alphaduplex
