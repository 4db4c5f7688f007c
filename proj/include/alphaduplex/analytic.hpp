#pragma once

// Closed-form spatially averaged BER and throughput.
//
// Each direction's interference is the product of two Laplace transforms
// (cross-mode and co-mode aggregate interference of independent PPPs with
// the appropriate exclusion regions). The averaging lemma then turns
// E[w1 erfc(sqrt(w2 x / (y + b)))], x ~ Exp(1), into a single integral of
// the transform of y.

#include <functional>

#include "alphaduplex/model.hpp"
#include "alphaduplex/pulse.hpp"
#include "alphaduplex/specfun.hpp"

namespace alphaduplex {

struct LinkMetrics {
    Direction direction = Direction::Uplink;
    double alpha = 0.0;
    double ber = 0.0;
    double bandwidth = 0.0;   // Hz, B_a + alpha B
    double throughput = 0.0;  // bit/s, log2(M) bandwidth (1 - ber)
};

/// Fills bandwidth and throughput from `ber`.
LinkMetrics make_link_metrics(Direction d, double alpha, double ber, const SystemParams& p);

// Laplace transforms; `s` is the dimensionless argument applied to the
// rho- (uplink) or P_b r_o^-eta- (downlink) normalised interference.

/// Downlink BSs seen by an uplink receiver (no exclusion region).
double lt_bs_on_uplink(double s, const InterferenceFactors& factors, const SystemParams& p);
/// Co-channel UEs seen by an uplink receiver, protected by P_u r^-eta < rho.
double lt_ue_on_uplink(double s, const SystemParams& p);
/// Co-channel BSs seen by a downlink UE at serving distance r_o (metres).
double lt_bs_on_downlink(double s, double r_o, const SystemParams& p);
/// Uplink UEs seen by a downlink UE, approximated as collocated with its BS.
double lt_ue_on_downlink(double s, double r_o, const InterferenceFactors& factors, const SystemParams& p);

using LaplaceTransform = std::function<double(double)>;

/// w1 - (w1/sqrt(pi)) int_0^inf L_y(z/w2) exp(-z (1 + b/w2)) / sqrt(z) dz.
double hamdi_average(const LaplaceTransform& lt_y, double omega1, double omega2, double b_const,
                     const specfun::QuadratureSpec& spec = {});

/// General path-loss exponent.
LinkMetrics ber_uplink(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                       const specfun::QuadratureSpec& spec = {});
LinkMetrics ber_downlink(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                         const specfun::QuadratureSpec& spec = {});

/// eta = 4 closed forms (arctan in place of 2F1); DomainError for other eta.
LinkMetrics ber_uplink_eta4(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                            const specfun::QuadratureSpec& spec = {});
LinkMetrics ber_downlink_eta4(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                              const specfun::QuadratureSpec& spec = {});

}  // namespace alphaduplex
