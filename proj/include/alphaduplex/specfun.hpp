#pragma once

// Special functions and quadrature engines shared by the analytic formulas.

#include <functional>
#include <span>

namespace alphaduplex::specfun {

using Integrand = std::function<double(double)>;

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;

    /// Throws DomainError unless every field is strictly positive.
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
};

double erfc(double x);

/// gamma(s, x) = int_0^x t^(s-1) e^-t dt, for s > 0 and x >= 0.
double lower_incomplete_gamma(double s, double x);

/// 2F1(1, b; b+1; -x) for 0 < b < 1, x >= 0.
///
/// Evaluated from b * int_0^1 t^(b-1) / (1 + x t) dt after the substitution
/// t = u^(1/b), which leaves the smooth integrand 1 / (1 + x u^(1/b)).
double hyp2f1_special(double b, double x);

/// Global adaptive Gauss-Kronrod (G10/K21) quadrature over [a, b].
///
/// `breakpoints` seeds the initial partition (points outside (a, b) are
/// ignored); use it for known kinks or zeros of oscillatory integrands.
/// Throws ConvergenceError when max_subdivisions is exhausted.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {},
                           std::span<const double> breakpoints = {});

/// int_0^inf f(z) dz for integrands bounded by e^(-decay_rate z) / sqrt(z).
///
/// Substitutes z = t^2 (removing the 1/sqrt(z) endpoint singularity) and
/// truncates at the T where the envelope's tail sqrt(pi/c) erfc(sqrt(c) T)
/// falls below a tenth of abs_tol.
QuadratureResult integrate_semi_infinite(const Integrand& f, double decay_rate,
                                         const QuadratureSpec& spec = {});

/// Upper limit in t (z = t^2) used by integrate_semi_infinite.
double semi_infinite_cutoff(double decay_rate, double abs_tol);

}  // namespace alphaduplex::specfun
