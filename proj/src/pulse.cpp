#include "alphaduplex/pulse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "alphaduplex/errors.hpp"

namespace alphaduplex {

namespace {

using std::numbers::pi;

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - (pi * x) * (pi * x) / 6.0;
    return std::sin(pi * x) / (pi * x);
}

double unit_shape(PulseKind kind, double x) {
    const double s = sinc(x);
    return kind == PulseKind::Rectangular ? s : s * s;
}

// int_{-1}^{1} shape(x)^2 dx: energy of the main lobe in the unit null-to-null scaling.
double main_lobe_energy(PulseKind kind) {
    static const double rect = specfun::integrate([](double x) { return std::pow(sinc(x), 2); }, -1.0, 1.0,
                                                  {1e-14, 1e-16, 200})
                                   .value;
    static const double tri = specfun::integrate([](double x) { return std::pow(sinc(x), 4); }, -1.0, 1.0,
                                                 {1e-14, 1e-16, 200})
                                  .value;
    return kind == PulseKind::Rectangular ? rect : tri;
}

bool same_band(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string_view to_string(PulseKind k) { return k == PulseKind::Rectangular ? "rect" : "tri"; }

PulseKind parse_pulse_kind(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "r" || t == "rect" || t == "rectangular" || t == "rectangle") return PulseKind::Rectangular;
    if (t == "t" || t == "tri" || t == "triangle" || t == "triangular") return PulseKind::Triangular;
    throw DomainError("unknown pulse kind '" + std::string(text) + "'");
}

PulseShape::PulseShape(PulseKind kind, double allocated_band) : kind_(kind), band_(allocated_band) {
    if (!(allocated_band > 0.0) || !std::isfinite(allocated_band)) {
        throw DomainError("PulseShape: allocated_band must be positive");
    }
    // Substituting f = x W/2: int_{-W/2}^{W/2} S^2 df = scale^2 (W/2) main_lobe_energy.
    scale_ = 1.0 / std::sqrt(0.5 * band_ * main_lobe_energy(kind));
}

double PulseShape::spectrum(double f) const { return scale_ * unit_shape(kind_, 2.0 * f / band_); }

BandPlan::BandPlan(double b_u, double b_d, double alpha) : b_u_(b_u), b_d_(b_d), alpha_(alpha) {
    if (!(b_u > 0.0) || !(b_d > 0.0)) throw DomainError("BandPlan: bands must be positive");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("BandPlan: alpha must lie in [0, 1]");
}

double BandPlan::overlap_unit() const { return std::min(b_u_, b_d_); }

double BandPlan::carrier_offset() const { return 0.5 * (b_u_ + b_d_) - alpha_ * overlap_unit(); }

double BandPlan::accessible_bandwidth(Direction d) const {
    return (d == Direction::Uplink ? b_u_ : b_d_) + alpha_ * overlap_unit();
}

double BandPlan::carrier(Direction d) const { return d == Direction::Uplink ? 0.0 : carrier_offset(); }

double carrier_offset(double b_u, double b_d, double alpha) { return BandPlan(b_u, b_d, alpha).carrier_offset(); }

InterferenceFactors InterferenceFactors::cross(double du, double ud) {
    InterferenceFactors f;
    f.i_du_sq = du;
    f.i_ud_sq = ud;
    f.i_su_sq = du;
    f.i_sd_sq = ud;
    return f;
}

std::complex<double> effective_interference_factor(Direction victim, Direction aggressor, const BandPlan& plan,
                                                   const PulseShape& pulse_u, const PulseShape& pulse_d,
                                                   const specfun::QuadratureSpec& spec) {
    if (!same_band(pulse_u.allocated_band(), plan.accessible_bandwidth(Direction::Uplink)) ||
        !same_band(pulse_d.allocated_band(), plan.accessible_bandwidth(Direction::Downlink))) {
        throw DomainError("effective_interference_factor: pulses must occupy their accessible bandwidths");
    }
    if (victim == aggressor) return {1.0, 0.0};
    const PulseShape& own = victim == Direction::Uplink ? pulse_u : pulse_d;
    const PulseShape& other = aggressor == Direction::Uplink ? pulse_u : pulse_d;
    const double shift = plan.carrier(aggressor) - plan.carrier(victim);
    const double half = 0.5 * own.allocated_band();

    // Work in units of the victim band so the integrand is O(1).
    const double w = own.allocated_band();
    auto integrand = [&](double x) { return w * other.spectrum(w * x - shift) * own.spectrum(w * x); };

    // Seed the partition with the aggressor's nulls inside the window.
    std::vector<double> nulls;
    const double lobe = 0.5 * other.allocated_band();
    const long k_lo = static_cast<long>(std::floor((-half - shift) / lobe));
    const long k_hi = static_cast<long>(std::ceil((half - shift) / lobe));
    for (long k = k_lo; k <= k_hi; ++k) {
        if (k == 0) continue;
        nulls.push_back((shift + static_cast<double>(k) * lobe) / w);
    }
    const double value = specfun::integrate(integrand, -0.5, 0.5, spec, nulls).value;
    return {value, 0.0};
}

std::complex<double> effective_interference_factor(Direction victim, Direction aggressor, const BandPlan& plan,
                                                   const PulsePair& pulses, const specfun::QuadratureSpec& spec) {
    const PulseShape up(pulses.uplink, plan.accessible_bandwidth(Direction::Uplink));
    const PulseShape down(pulses.downlink, plan.accessible_bandwidth(Direction::Downlink));
    return effective_interference_factor(victim, aggressor, plan, up, down, spec);
}

InterferenceFactors interference_factors(const BandPlan& plan, const PulsePair& pulses,
                                         const specfun::QuadratureSpec& spec) {
    const double du = std::norm(effective_interference_factor(Direction::Uplink, Direction::Downlink, plan, pulses, spec));
    const double ud = std::norm(effective_interference_factor(Direction::Downlink, Direction::Uplink, plan, pulses, spec));
    return InterferenceFactors::cross(du, ud);
}

FactorProvider pulse_factor_provider(const SystemParams& p, const PulsePair& pulses) {
    return [b_u = p.b_u, b_d = p.b_d, pulses](double alpha) {
        return interference_factors(BandPlan(b_u, b_d, alpha), pulses);
    };
}

FactorProvider constant_factor_provider(const InterferenceFactors& factors) {
    return [factors](double) { return factors; };
}

}  // namespace alphaduplex
