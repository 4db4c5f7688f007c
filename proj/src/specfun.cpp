#include "alphaduplex/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "alphaduplex/errors.hpp"

namespace alphaduplex::specfun {

namespace {

// QUADPACK qk21 abscissae (descending, last is the centre) and weights.
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208626368305, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod21(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kKronrodWeights[10];
    double gauss = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
        throw DomainError("QuadratureSpec requires rel_tol > 0, abs_tol > 0, max_subdivisions >= 1");
    }
}

double erfc(double x) { return std::erfc(x); }

double lower_incomplete_gamma(double s, double x) {
    if (!(s > 0.0)) throw DomainError("lower_incomplete_gamma: s must be > 0");
    if (!(x >= 0.0)) throw DomainError("lower_incomplete_gamma: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::tgamma(s);
    return boost::math::tgamma_lower(s, x);
}

double hyp2f1_special(double b, double x) {
    if (!(b > 0.0 && b < 1.0)) throw DomainError("hyp2f1_special: b must lie in (0, 1)");
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("hyp2f1_special: x must be finite and >= 0");
    if (x == 0.0) return 1.0;
    const double inv_b = 1.0 / b;
    const Integrand integrand = [x, inv_b](double u) { return 1.0 / (1.0 + x * std::pow(u, inv_b)); };
    // x u^(1/b) = 1 at u = x^-b; the integrand turns over there.
    const std::array<double, 1> knee = {std::pow(x, -b)};
    QuadratureSpec spec{1e-13, 1e-15, 500};
    return integrate(integrand, 0.0, 1.0, spec, knee).value;
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                           std::span<const double> breakpoints) {
    spec.validate();
    if (!(a <= b)) throw DomainError("integrate: lower limit exceeds upper limit");
    if (a == b) return {};

    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment> heap;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = gauss_kronrod21(f, cuts[i], cuts[i + 1]);
        total += s.value;
        error += s.error;
        heap.push(s);
    }

    int subdivisions = 0;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (subdivisions >= spec.max_subdivisions) {
            throw ConvergenceError("integrate: " + std::to_string(spec.max_subdivisions) +
                                   " subdivisions exhausted on [" + std::to_string(a) + ", " +
                                   std::to_string(b) + "], error estimate " + std::to_string(error));
        }
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("integrate: interval collapsed below floating-point resolution");
        }
        heap.pop();
        Segment left = gauss_kronrod21(f, worst.a, mid);
        Segment right = gauss_kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {total, error, subdivisions};
}

double semi_infinite_cutoff(double decay_rate, double abs_tol) {
    if (!(decay_rate > 0.0)) throw DomainError("semi_infinite_cutoff: decay_rate must be > 0");
    const double target = 0.1 * abs_tol * std::sqrt(decay_rate / std::numbers::pi);
    double lo = 0.0;
    double hi = 40.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::erfc(mid) > target ? lo : hi) = mid;
    }
    return hi / std::sqrt(decay_rate);
}

QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_rate, const QuadratureSpec& spec) {
    spec.validate();
    const double cutoff = semi_infinite_cutoff(decay_rate, spec.abs_tol);
    const Integrand g = [&f](double t) { return 2.0 * t * f(t * t); };
    QuadratureResult r = integrate(g, 0.0, cutoff, spec);
    r.abs_error += 0.1 * spec.abs_tol;
    return r;
}

}  // namespace alphaduplex::specfun
