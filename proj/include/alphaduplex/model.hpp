#pragma once

// Network constants and the closed-form primitives of the active-UE model:
// serving-distance density and the moments of the uplink transmit power.
//
// Everything is SI internally: metres, watts, hertz, BS per square metre.

#include <cmath>
#include <string_view>

namespace alphaduplex {

enum class Direction { Uplink, Downlink };

std::string_view to_string(Direction d);

namespace units {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
constexpr double per_km2_to_per_m2(double v) { return v * 1e-6; }
constexpr double mhz_to_hz(double v) { return v * 1e6; }
constexpr double km_to_m(double v) { return v * 1e3; }

}  // namespace units

struct SystemParams {
    double lambda_bs;  // BS intensity, 1/m^2
    double eta;        // path-loss exponent
    double rho;        // power-control target at the serving BS, W
    double p_b;        // BS transmit power, W
    double p_u_max;    // UE maximum transmit power, W
    double beta;       // residual self-interference attenuation (linear)
    double n0;         // noise density, W/Hz
    double b_u;        // uplink null-to-null band, Hz
    double b_d;        // downlink null-to-null band, Hz
    double omega1_u = 1.0;
    double omega2_u = 1.0;
    double omega1_d = 1.0;
    double omega2_d = 1.0;
    int m_symbols = 2;

    /// Throws DomainError naming the first violated invariant.
    void validate() const;

    /// sigma_n^2 = N_o / 2 (the matched filter has unit in-band energy).
    double noise_variance() const { return 0.5 * n0; }
    /// (P_u^max / rho)^(1/eta): the largest distance a UE can invert.
    double max_serving_distance() const;
    /// 1 - exp(-pi lambda r_max^2): probability that a UE can invert its channel.
    double truncation_mass() const;
    /// min(B_u, B_d).
    double overlap_unit() const;
    double bits_per_symbol() const;

    bool operator==(const SystemParams&) const = default;
};

/// Default values: rho = -70 dBm, P_b = 5 W, lambda = 3 BS/km^2,
/// P_u^max = 1 W, B_u = B_d = 1 MHz, beta = -80 dB, N_o = -90 dBm, eta = 4.
SystemParams default_params();

/// Density of the distance between an active UE and its serving BS, 1/m.
double distance_pdf(double r, const SystemParams& p);

/// E[P_u^a] for an active UE under truncated channel inversion, W^a.
double uplink_power_moment(double a, const SystemParams& p);

}  // namespace alphaduplex
