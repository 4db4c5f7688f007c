#include "alphaduplex/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alphaduplex/errors.hpp"

namespace alphaduplex {

namespace {

using std::numbers::pi;
using specfun::hyp2f1_special;

// Tolerances for the r_o integral nested inside the outer z integral.
constexpr specfun::QuadratureSpec kInnerSpec{1e-10, 1e-14, 2000};

double clamp_ber(double ber, double omega1) { return std::clamp(ber, 0.0, omega1); }

void require_eta4(const SystemParams& p) {
    if (p.eta != 4.0) throw DomainError("eta = 4 specialisation called with eta != 4");
}

// Uplink transform L_{d->u}(s) L_{u->u}(s) with its constants hoisted.
class UplinkLaplace {
public:
    UplinkLaplace(const InterferenceFactors& f, const SystemParams& p)
        : eta_(p.eta), hyp_b_(1.0 - 2.0 / p.eta) {
        const double moment = uplink_power_moment(2.0 / p.eta, p);
        ue_coeff_ = 2.0 * pi * p.lambda_bs / (p.eta - 2.0) * std::pow(p.rho, -2.0 / p.eta) * moment;
        bs_coeff_ = 2.0 / p.eta * pi * pi * p.lambda_bs * std::pow(p.p_b * f.i_du_sq / p.rho, 2.0 / p.eta) /
                    std::sin(2.0 * pi / p.eta);
    }

    double bs(double s) const { return std::exp(-bs_coeff_ * std::pow(s, 2.0 / eta_)); }
    double ue(double s) const { return s == 0.0 ? 1.0 : std::exp(-ue_coeff_ * s * hyp2f1_special(hyp_b_, s)); }
    double operator()(double s) const { return bs(s) * ue(s); }

private:
    double eta_;
    double hyp_b_;
    double ue_coeff_;
    double bs_coeff_;
};

// Downlink transform L_{d->d}(s|r) L_{u->d}(s|r).
class DownlinkLaplace {
public:
    DownlinkLaplace(const InterferenceFactors& f, const SystemParams& p)
        : eta_(p.eta), hyp_b_(1.0 - 2.0 / p.eta), cross_(f.i_ud_sq * p.rho / p.p_b) {
        const double moment = uplink_power_moment(2.0 / p.eta, p);
        bs_coeff_ = 2.0 * pi * p.lambda_bs / (p.eta - 2.0);
        ue_coeff_ = 2.0 * pi * p.lambda_bs * f.i_ud_sq * moment * std::pow(p.rho, 1.0 - 2.0 / p.eta) /
                    ((p.eta - 2.0) * p.p_b);
    }

    /// 2F1(1, 1-2/eta; 2-2/eta; -s), shared by every r_o at fixed s.
    double bs_hyp(double s) const { return hyp2f1_special(hyp_b_, s); }

    double log_bs(double s, double r, double hyp) const { return -bs_coeff_ * r * r * s * hyp; }
    double log_ue(double s, double r) const {
        if (ue_coeff_ == 0.0 || s == 0.0) return 0.0;
        const double rn = std::pow(r, eta_);
        return -ue_coeff_ * s * rn * hyp2f1_special(hyp_b_, s * cross_ * rn);
    }
    double bs(double s, double r, double hyp) const { return std::exp(log_bs(s, r, hyp)); }
    double ue(double s, double r) const { return std::exp(log_ue(s, r)); }

private:
    double eta_;
    double hyp_b_;
    double cross_;
    double bs_coeff_;
    double ue_coeff_;
};

// Uplink constant b = beta P_b |I_s|^2 / rho + sigma_n^2 / rho.
double uplink_offset(const InterferenceFactors& f, const SystemParams& p) {
    return p.beta * p.p_b * f.i_su_sq / p.rho + p.noise_variance() / p.rho;
}

// Downlink outer integral over z of the r_o-averaged integrand; `log_lt(s, r)`
// returns log L_{I_d}(s | r).
template <class LogLaplace>
double downlink_ber(const InterferenceFactors& f, const SystemParams& p,
                    const specfun::QuadratureSpec& spec, LogLaplace&& log_lt) {
    const double r_max = p.max_serving_distance();
    const double si_coeff = p.beta * p.rho * f.i_sd_sq / p.p_b;
    const double noise_coeff = p.noise_variance() / p.p_b;
    const double w2 = p.omega2_d;

    auto over_z = [&](double z) {
        const double s = z / w2;
        auto over_r = [&](double r) {
            const double rn = std::pow(r, p.eta);
            const double offset = si_coeff * rn * rn + noise_coeff * rn;
            return distance_pdf(r, p) * std::exp(log_lt(s, r) - z * (1.0 + offset / w2));
        };
        return specfun::integrate(over_r, 0.0, r_max, kInnerSpec).value / std::sqrt(z);
    };
    const double integral = specfun::integrate_semi_infinite(over_z, 1.0, spec).value;
    const double ber = p.omega1_d - p.omega1_d / std::sqrt(pi) * integral;
    return clamp_ber(ber, p.omega1_d);
}

}  // namespace

LinkMetrics make_link_metrics(Direction d, double alpha, double ber, const SystemParams& p) {
    LinkMetrics m;
    m.direction = d;
    m.alpha = alpha;
    m.ber = ber;
    m.bandwidth = BandPlan(p, alpha).accessible_bandwidth(d);
    m.throughput = p.bits_per_symbol() * m.bandwidth * (1.0 - ber);
    return m;
}

double lt_bs_on_uplink(double s, const InterferenceFactors& factors, const SystemParams& p) {
    return UplinkLaplace(factors, p).bs(s);
}

double lt_ue_on_uplink(double s, const SystemParams& p) { return UplinkLaplace(InterferenceFactors{}, p).ue(s); }

double lt_bs_on_downlink(double s, double r_o, const SystemParams& p) {
    const DownlinkLaplace lt(InterferenceFactors{}, p);
    return lt.bs(s, r_o, lt.bs_hyp(s));
}

double lt_ue_on_downlink(double s, double r_o, const InterferenceFactors& factors, const SystemParams& p) {
    return DownlinkLaplace(factors, p).ue(s, r_o);
}

double hamdi_average(const LaplaceTransform& lt_y, double omega1, double omega2, double b_const,
                     const specfun::QuadratureSpec& spec) {
    if (!(b_const >= 0.0)) throw DomainError("hamdi_average: b_const must be >= 0");
    if (std::isinf(b_const)) return omega1;
    const double decay = 1.0 + b_const / omega2;
    auto integrand = [&](double z) { return lt_y(z / omega2) * std::exp(-z * decay) / std::sqrt(z); };
    const double integral = specfun::integrate_semi_infinite(integrand, decay, spec).value;
    return clamp_ber(omega1 - omega1 / std::sqrt(pi) * integral, omega1);
}

LinkMetrics ber_uplink(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                       const specfun::QuadratureSpec& spec) {
    p.validate();
    const UplinkLaplace lt(factors, p);
    const double ber = hamdi_average(lt, p.omega1_u, p.omega2_u, uplink_offset(factors, p), spec);
    return make_link_metrics(Direction::Uplink, alpha, ber, p);
}

LinkMetrics ber_uplink_eta4(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                            const specfun::QuadratureSpec& spec) {
    p.validate();
    require_eta4(p);
    const double root_moment = uplink_power_moment(0.5, p);
    const double cross = 0.5 * pi * std::sqrt(p.p_b * factors.i_du_sq);
    auto lt = [&](double s) {
        const double root_s = std::sqrt(s);
        return std::exp(-pi * p.lambda_bs * root_s / std::sqrt(p.rho) * (root_moment * std::atan(root_s) + cross));
    };
    const double ber = hamdi_average(lt, p.omega1_u, p.omega2_u, uplink_offset(factors, p), spec);
    return make_link_metrics(Direction::Uplink, alpha, ber, p);
}

LinkMetrics ber_downlink(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                         const specfun::QuadratureSpec& spec) {
    p.validate();
    const DownlinkLaplace lt(factors, p);
    // The BS term's 2F1 depends on s only; cache it across the r_o sweep.
    double cached_s = -1.0;
    double cached_hyp = 1.0;
    auto log_lt = [&](double s, double r) {
        if (s != cached_s) {
            cached_s = s;
            cached_hyp = lt.bs_hyp(s);
        }
        return lt.log_bs(s, r, cached_hyp) + lt.log_ue(s, r);
    };
    const double ber = downlink_ber(factors, p, spec, log_lt);
    return make_link_metrics(Direction::Downlink, alpha, ber, p);
}

LinkMetrics ber_downlink_eta4(double alpha, const InterferenceFactors& factors, const SystemParams& p,
                              const specfun::QuadratureSpec& spec) {
    p.validate();
    require_eta4(p);
    const double root_moment = uplink_power_moment(0.5, p);
    const double cross_amp = std::sqrt(factors.i_ud_sq / p.p_b);
    const double cross_arg = p.rho * factors.i_ud_sq / p.p_b;
    auto log_lt = [&](double s, double r) {
        const double root_s = std::sqrt(s);
        const double r2 = r * r;
        return -pi * p.lambda_bs * root_s * r2 *
               (cross_amp * root_moment * std::atan(r2 * std::sqrt(cross_arg * s)) + std::atan(root_s));
    };
    const double ber = downlink_ber(factors, p, spec, log_lt);
    return make_link_metrics(Direction::Downlink, alpha, ber, p);
}

}  // namespace alphaduplex
