#include <cmath>
#include <vector>

#include "alphaduplex/errors.hpp"
#include "alphaduplex/pulse.hpp"
#include "alphaduplex/specfun.hpp"
#include "doctest.h"

using namespace alphaduplex;

namespace {

double in_band_energy(const PulseShape& s) {
    const double w = s.allocated_band();
    auto f = [&](double x) {
        const double v = s.spectrum(x);
        return v * v;
    };
    return specfun::integrate(f, -0.5 * w, 0.5 * w, {1e-13, 1e-20, 500}).value;
}

std::vector<double> i_du_curve(const PulsePair& pulses, const SystemParams& p, int n) {
    std::vector<double> out;
    for (int k = 0; k <= n; ++k) out.push_back(interference_factors(BandPlan(p, double(k) / n), pulses).i_du_sq);
    return out;
}

}  // namespace

TEST_CASE("pulse kind names") {
    CHECK(parse_pulse_kind("rect") == PulseKind::Rectangular);
    CHECK(parse_pulse_kind("R") == PulseKind::Rectangular);
    CHECK(parse_pulse_kind("Rectangular") == PulseKind::Rectangular);
    CHECK(parse_pulse_kind("tri") == PulseKind::Triangular);
    CHECK(parse_pulse_kind("TRIANGLE") == PulseKind::Triangular);
    CHECK(parse_pulse_kind("t") == PulseKind::Triangular);
    CHECK_THROWS_AS(parse_pulse_kind("gauss"), DomainError);
    CHECK(to_string(PulseKind::Rectangular) == "rect");
    CHECK(to_string(PulseKind::Triangular) == "tri");
}

TEST_CASE("spectrum nulls, symmetry, in-band energy") {
    for (PulseKind k : {PulseKind::Rectangular, PulseKind::Triangular}) {
        for (double w : {1e6, 1.37e6, 2e6}) {
            const PulseShape s(k, w);
            CHECK(std::abs(s.spectrum(0.5 * w)) <= 1e-12 * s.spectrum(0.0));
            CHECK(s.spectrum(0.0) > 0.0);
            for (double f : {1.0, 1e5, 3.3e5, 2.9e6}) CHECK(s.spectrum(f) == s.spectrum(-f));
            CHECK(in_band_energy(s) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(PulseShape(PulseKind::Rectangular, 0.0), DomainError);
}

TEST_CASE("carrier offset") {
    CHECK(carrier_offset(1e6, 1e6, 0.0) == 1e6);
    CHECK(carrier_offset(1e6, 1e6, 1.0) == 0.0);
    CHECK(carrier_offset(1e6, 2e6, 0.5) == doctest::Approx(1e6));
    CHECK_THROWS_AS(carrier_offset(1e6, 1e6, 1.1), DomainError);
    CHECK_THROWS_AS(carrier_offset(1e6, 1e6, -0.1), DomainError);

    const BandPlan plan(1e6, 2e6, 0.25);
    CHECK(plan.accessible_bandwidth(Direction::Uplink) == 1.25e6);
    CHECK(plan.accessible_bandwidth(Direction::Downlink) == 2.25e6);
    CHECK(plan.carrier(Direction::Downlink) - plan.carrier(Direction::Uplink) == plan.carrier_offset());
}

TEST_CASE("co-channel factors are exactly one") {
    const SystemParams p = default_params();
    const BandPlan plan(p, 0.4);
    const PulsePair rt;
    CHECK(effective_interference_factor(Direction::Uplink, Direction::Uplink, plan, rt) == std::complex<double>(1.0, 0.0));
    CHECK(effective_interference_factor(Direction::Downlink, Direction::Downlink, plan, rt) == std::complex<double>(1.0, 0.0));
    const InterferenceFactors f = interference_factors(plan, rt);
    CHECK(f.i_uu_sq == 1.0);
    CHECK(f.i_dd_sq == 1.0);
    CHECK(f.i_su_sq == f.i_du_sq);
    CHECK(f.i_sd_sq == f.i_ud_sq);
}

TEST_CASE("same pulse both ways gives equal cross factors") {
    const SystemParams p = default_params();
    for (PulseKind k : {PulseKind::Rectangular, PulseKind::Triangular}) {
        const PulsePair same{k, k};
        for (double a = 0.0; a <= 1.0; a += 0.05) {
            const InterferenceFactors f = interference_factors(BandPlan(p, a), same);
            CHECK(f.i_du_sq == doctest::Approx(f.i_ud_sq).epsilon(1e-8));
        }
    }
}

TEST_CASE("adjacent-channel leakage at alpha = 0") {
    const SystemParams p = default_params();
    const InterferenceFactors f = interference_factors(BandPlan(p, 0.0), PulsePair{PulseKind::Rectangular, PulseKind::Rectangular});
    CHECK(f.i_du_sq > 0.0);
    CHECK(f.i_ud_sq > 0.0);
}

TEST_CASE("cross factors bounded by one") {
    const SystemParams p = default_params();
    for (PulseKind d : {PulseKind::Rectangular, PulseKind::Triangular})
        for (PulseKind u : {PulseKind::Rectangular, PulseKind::Triangular})
            for (double a = 0.0; a <= 1.0; a += 0.02) {
                const InterferenceFactors f = interference_factors(BandPlan(p, a), PulsePair{d, u});
                CHECK(f.i_du_sq >= 0.0);
                CHECK(f.i_du_sq <= 1.0 + 1e-12);
                CHECK(f.i_ud_sq >= 0.0);
                CHECK(f.i_ud_sq <= 1.0 + 1e-12);
            }
}

TEST_CASE("rect downlink / tri uplink: non-monotone with a near-orthogonal dip") {
    const SystemParams p = default_params();
    const auto curve = i_du_curve(PulsePair{}, p, 100);
    bool interior_min = false;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i)
        if (curve[i] < curve[i - 1] && curve[i] < curve[i + 1]) interior_min = true;
    CHECK(interior_min);
    const double at_275 = interference_factors(BandPlan(p, 0.275), PulsePair{}).i_du_sq;
    CHECK(at_275 < curve.front());
}

TEST_CASE("explicit pulses must occupy the accessible band") {
    const SystemParams p = default_params();
    const BandPlan plan(p, 0.5);
    const PulseShape u(PulseKind::Triangular, 1.5e6), d(PulseKind::Rectangular, 1.5e6);
    const auto by_kind = effective_interference_factor(Direction::Uplink, Direction::Downlink, plan, PulsePair{});
    const auto by_shape = effective_interference_factor(Direction::Uplink, Direction::Downlink, plan, u, d);
    CHECK(by_kind.real() == doctest::Approx(by_shape.real()).epsilon(1e-14));
    const PulseShape wrong(PulseKind::Triangular, 1e6);
    CHECK_THROWS_AS(effective_interference_factor(Direction::Uplink, Direction::Downlink, plan, wrong, d), DomainError);
}

TEST_CASE("factor providers") {
    const SystemParams p = default_params();
    const FactorProvider fp = pulse_factor_provider(p, PulsePair{});
    CHECK(fp(0.3).i_du_sq == interference_factors(BandPlan(p, 0.3), PulsePair{}).i_du_sq);
    const FactorProvider c = constant_factor_provider(InterferenceFactors::cross(0.2, 0.4));
    CHECK(c(0.0).i_du_sq == 0.2);
    CHECK(c(1.0).i_sd_sq == 0.4);
    CHECK(InterferenceFactors::none().i_su_sq == 0.0);
}
