#include <algorithm>
#include <cmath>
#include <random>

#include "alphaduplex/analytic.hpp"
#include "alphaduplex/errors.hpp"
#include "alphaduplex/specfun.hpp"
#include "doctest.h"

using namespace alphaduplex;

namespace {

SystemParams quiet_network() {
    SystemParams p = default_params();
    p.lambda_bs = 1e-14;
    p.beta = 0.0;
    p.n0 = 1e-40;
    return p;
}

InterferenceFactors rt_factors(double alpha, const SystemParams& p) {
    return interference_factors(BandPlan(p, alpha), PulsePair{});
}

}  // namespace

TEST_CASE("Laplace transforms at s = 0 and with silent aggressors") {
    const SystemParams p = default_params();
    const auto f = InterferenceFactors::cross(0.3, 0.3);
    CHECK(lt_bs_on_uplink(0.0, f, p) == 1.0);
    CHECK(lt_ue_on_uplink(0.0, p) == 1.0);
    CHECK(lt_bs_on_downlink(0.0, 120.0, p) == 1.0);
    CHECK(lt_ue_on_downlink(0.0, 120.0, f, p) == 1.0);
    for (double s : {0.1, 1.0, 10.0}) {
        CHECK(lt_bs_on_uplink(s, InterferenceFactors::none(), p) == 1.0);
        CHECK(lt_ue_on_downlink(s, 120.0, InterferenceFactors::none(), p) == 1.0);
        CHECK(lt_bs_on_downlink(s, 1e-9, p) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SystemParams sparse = p;
    sparse.lambda_bs = 1e-20;
    CHECK(lt_ue_on_uplink(5.0, sparse) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Laplace transforms lie in (0, 1] and do not increase with s") {
    const SystemParams p = default_params();
    const auto f = InterferenceFactors::cross(0.5, 0.05);
    double prev[4] = {1.0, 1.0, 1.0, 1.0};
    for (double s = 0.0; s <= 50.0; s += 0.1) {
        const double v[4] = {lt_bs_on_uplink(s, f, p), lt_ue_on_uplink(s, p), lt_bs_on_downlink(s, 200.0, p),
                             lt_ue_on_downlink(s, 200.0, f, p)};
        for (int k = 0; k < 4; ++k) {
            CHECK(v[k] > 0.0);
            CHECK(v[k] <= 1.0);
            CHECK(v[k] <= prev[k]);
            prev[k] = v[k];
        }
    }
}

TEST_CASE("averaging lemma limits") {
    auto one = [](double) { return 1.0; };
    CHECK(std::abs(hamdi_average(one, 1.0, 1.0, 0.0)) <= 1e-9);
    CHECK(hamdi_average(one, 0.5, 1.0, INFINITY) == 0.5);
    CHECK(hamdi_average(one, 1.0, 1.0, 1e12) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK_THROWS_AS(hamdi_average(one, 1.0, 1.0, -1.0), DomainError);
}

TEST_CASE("averaging lemma vs Monte Carlo, exponential interference") {
    const double mu = 0.8;
    auto lt = [mu](double s) { return 1.0 / (1.0 + mu * s); };
    const double formula = hamdi_average(lt, 1.0, 1.0, 0.0);
    std::mt19937_64 rng(7);
    std::exponential_distribution<double> unit(1.0);
    const int n = 1'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = std::erfc(std::sqrt(unit(rng) / (mu * unit(rng))));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1));
    CHECK(std::abs(formula - mean) <= 3.0 * se);
}

TEST_CASE("interference- and noise-free links have vanishing BER") {
    const SystemParams p = quiet_network();
    const auto f = InterferenceFactors::none();
    CHECK(ber_uplink(0.0, f, p).ber <= 1e-6);
    CHECK(ber_downlink(0.0, f, p).ber <= 1e-6);
    CHECK(ber_downlink_eta4(0.0, f, p).ber <= 1e-6);
}

TEST_CASE("uplink BER growth from HD to FD at beta = 0") {
    SystemParams p = default_params();
    p.beta = 0.0;
    const double hd = ber_uplink(0.0, rt_factors(0.0, p), p).ber;
    const double fd = ber_uplink(1.0, rt_factors(1.0, p), p).ber;
    // Relative growth near +350%.
    CHECK(fd / hd - 1.0 == doctest::Approx(3.5).epsilon(0.15));
}

TEST_CASE("downlink BER almost flat in alpha at beta = 0") {
    SystemParams p = default_params();
    p.beta = 0.0;
    double lo = 1.0, hi = 0.0;
    for (double a = 0.0; a <= 1.0 + 1e-9; a += 0.1) {
        const double b = ber_downlink(a, rt_factors(a, p), p).ber;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    CHECK(hi - lo < 0.02);
}

TEST_CASE("eta = 4 closed forms agree with the general path") {
    const SystemParams p = default_params();
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto f = rt_factors(a, p);
        CHECK(ber_uplink_eta4(a, f, p).ber == doctest::Approx(ber_uplink(a, f, p).ber).epsilon(1e-6));
        CHECK(ber_downlink_eta4(a, f, p).ber == doctest::Approx(ber_downlink(a, f, p).ber).epsilon(1e-6));
    }
    SystemParams other = p;
    other.eta = 3.5;
    CHECK_THROWS_AS(ber_uplink_eta4(0.0, InterferenceFactors::none(), other), DomainError);
    CHECK_THROWS_AS(ber_downlink_eta4(0.0, InterferenceFactors::none(), other), DomainError);
    CHECK_NOTHROW(ber_uplink(0.0, InterferenceFactors::none(), other));
    CHECK_NOTHROW(ber_downlink(0.0, InterferenceFactors::none(), other));
}

TEST_CASE("HD downlink without cross terms reduces to the co-channel BS transform") {
    SystemParams p = default_params();
    p.beta = 0.0;
    const auto none = InterferenceFactors::none();
    // Direct composition: average over r_o of the lemma with L_{d->d} alone.
    auto over_r = [&](double r) {
        const double rn = std::pow(r, p.eta);
        auto lt = [&](double s) { return lt_bs_on_downlink(s, r, p); };
        return distance_pdf(r, p) * hamdi_average(lt, 1.0, 1.0, p.noise_variance() * rn / p.p_b, {1e-10, 1e-13, 2000});
    };
    const double direct = specfun::integrate(over_r, 0.0, p.max_serving_distance(), {1e-9, 1e-13, 2000}).value;
    CHECK(ber_downlink_eta4(0.0, none, p).ber == doctest::Approx(direct).epsilon(1e-7));
    CHECK(ber_downlink(0.0, none, p).ber == doctest::Approx(direct).epsilon(1e-7));
}

TEST_CASE("arctan factor equals the 2F1 form pointwise") {
    for (double z : {1e-4, 0.3, 2.0, 40.0}) {
        const double w2 = 1.0;
        CHECK(std::atan(std::sqrt(z / w2)) ==
              doctest::Approx(specfun::hyp2f1_special(0.5, z / w2) * std::sqrt(z / w2)).epsilon(1e-10));
    }
}

TEST_CASE("BER monotonicity in rho, P_b and beta") {
    const SystemParams base = default_params();
    const auto f = rt_factors(0.5, base);

    SystemParams p = base;
    double prev = 1.0;
    for (double dbm : {-80.0, -75.0, -70.0, -65.0}) {
        p.rho = units::dbm_to_watts(dbm);
        const double b = ber_uplink(0.5, f, p).ber;
        CHECK(b <= prev + 1e-12);
        prev = b;
    }

    p = base;
    prev = 1.0;
    for (double pb : {0.5, 2.0, 5.0, 20.0}) {
        p.p_b = pb;
        const double b = ber_downlink(0.5, f, p).ber;
        CHECK(b <= prev + 1e-12);
        prev = b;
    }

    p = base;
    double prev_u = 0.0, prev_d = 0.0;
    for (double db : {-120.0, -100.0, -90.0, -80.0, -70.0}) {
        p.beta = units::db_to_linear(db);
        const double bu = ber_uplink(0.5, f, p).ber, bd = ber_downlink(0.5, f, p).ber;
        CHECK(bu >= prev_u - 1e-12);
        CHECK(bd >= prev_d - 1e-12);
        prev_u = bu;
        prev_d = bd;
    }
}

TEST_CASE("orthogonal directions decouple") {
    SystemParams p = default_params();
    p.beta = 0.0;
    const auto none = InterferenceFactors::none();
    const double ref = ber_uplink(0.4, none, p).ber;
    SystemParams q = p;
    q.p_b = 40.0;
    q.b_d = 3e6;
    CHECK(ber_uplink(0.4, none, q).ber == ref);

    const double ref_d = ber_downlink(0.4, none, p).ber;
    SystemParams r = p;
    r.p_u_max = 2.0;  // same rho / p_u_max ratio keeps the truncation
    r.rho = 2.0 * p.rho;
    CHECK(ber_downlink(0.4, none, r).ber == doctest::Approx(ref_d).epsilon(1e-12));
}

TEST_CASE("throughput identity and bandwidth") {
    SystemParams p = default_params();
    p.m_symbols = 4;
    const auto f = rt_factors(0.3, p);
    const LinkMetrics u = ber_uplink(0.3, f, p), d = ber_downlink(0.3, f, p);
    CHECK(u.bandwidth == 1.3e6);
    CHECK(d.bandwidth == 1.3e6);
    CHECK(u.throughput == 2.0 * u.bandwidth * (1.0 - u.ber));
    CHECK(d.throughput == 2.0 * d.bandwidth * (1.0 - d.ber));
    CHECK(u.ber >= 0.0);
    CHECK(u.ber <= p.omega1_u);
    CHECK(u.direction == Direction::Uplink);
    CHECK(d.direction == Direction::Downlink);
}
