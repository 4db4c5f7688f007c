#pragma once

// Pulse-shape spectra, the alpha-duplex band plan, and the effective
// interference factors between matched filters and (shifted) aggressor spectra.

#include <complex>
#include <functional>
#include <string_view>

#include "alphaduplex/model.hpp"
#include "alphaduplex/specfun.hpp"

namespace alphaduplex {

/// Time-domain shape; its spectrum is sinc (Rectangular) or sinc^2 (Triangular).
enum class PulseKind { Rectangular, Triangular };

std::string_view to_string(PulseKind k);
/// Accepts "rect", "rectangular", "R", "tri", "triangle", "triangular", "T" (any case).
PulseKind parse_pulse_kind(std::string_view text);

/// A pulse scaled so that its spectral main lobe spans `allocated_band` null to
/// null, normalised to unit energy inside that band.
class PulseShape {
public:
    PulseShape(PulseKind kind, double allocated_band);

    PulseKind kind() const { return kind_; }
    double allocated_band() const { return band_; }

    /// S(f): real, even, first nulls at +-allocated_band/2.
    double spectrum(double f) const;

private:
    PulseKind kind_;
    double band_;
    double scale_;
};

/// Pulse kinds per direction. Two-letter labels list the downlink first:
/// "RT" is a rectangular downlink with a triangular uplink.
struct PulsePair {
    PulseKind downlink = PulseKind::Rectangular;
    PulseKind uplink = PulseKind::Triangular;

    PulseKind of(Direction d) const { return d == Direction::Uplink ? uplink : downlink; }
    bool operator==(const PulsePair&) const = default;
};

class BandPlan {
public:
    /// Throws DomainError unless both bands are positive and alpha is in [0, 1].
    BandPlan(double b_u, double b_d, double alpha);
    BandPlan(const SystemParams& p, double alpha) : BandPlan(p.b_u, p.b_d, alpha) {}

    double b_u() const { return b_u_; }
    double b_d() const { return b_d_; }
    double alpha() const { return alpha_; }
    double overlap_unit() const;
    /// f_d - f_u.
    double carrier_offset() const;
    /// B_a + alpha B.
    double accessible_bandwidth(Direction d) const;
    /// Carrier of `d` relative to the uplink carrier.
    double carrier(Direction d) const;

private:
    double b_u_;
    double b_d_;
    double alpha_;
};

/// (B_u + B_d)/2 - alpha min(B_u, B_d).
double carrier_offset(double b_u, double b_d, double alpha);

/// Squared magnitudes of the six factors at one alpha.
struct InterferenceFactors {
    double i_du_sq = 0.0;  // downlink on uplink receiver
    double i_ud_sq = 0.0;  // uplink on downlink receiver
    double i_su_sq = 0.0;  // self-interference at the uplink receiver (== i_du_sq)
    double i_sd_sq = 0.0;  // self-interference at the downlink receiver (== i_ud_sq)
    double i_uu_sq = 1.0;
    double i_dd_sq = 1.0;

    /// Co-channel terms at unity, cross and self terms at `du` and `ud`.
    static InterferenceFactors cross(double du, double ud);
    /// Perfectly orthogonal directions.
    static InterferenceFactors none() { return cross(0.0, 0.0); }
};

/// int over the victim band of S_b(f - f_b + f_a) S_a*(f) df, with both pulses
/// scaled to their own accessible bandwidths under `plan`.
std::complex<double> effective_interference_factor(Direction victim, Direction aggressor, const BandPlan& plan,
                                                   const PulsePair& pulses, const specfun::QuadratureSpec& spec = {});

/// Same, for explicitly supplied pulses. Each must already occupy the
/// accessible bandwidth of its direction; DomainError otherwise.
std::complex<double> effective_interference_factor(Direction victim, Direction aggressor, const BandPlan& plan,
                                                   const PulseShape& pulse_u, const PulseShape& pulse_d,
                                                   const specfun::QuadratureSpec& spec = {});

InterferenceFactors interference_factors(const BandPlan& plan, const PulsePair& pulses,
                                         const specfun::QuadratureSpec& spec = {});

/// Maps alpha to the factors used at that alpha.
using FactorProvider = std::function<InterferenceFactors(double alpha)>;

/// Factors from the pulse pair under the band plan of `p` at each alpha.
FactorProvider pulse_factor_provider(const SystemParams& p, const PulsePair& pulses);
/// The same factors at every alpha.
FactorProvider constant_factor_provider(const InterferenceFactors& factors);

}  // namespace alphaduplex
