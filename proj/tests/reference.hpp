// reference.hpp — Closed-form references used only by the tests
//
// For J(w) = lambda (w/Omega)^s Omega e^{-w/Omega}, s != 1:
//   Phi(t)              = lambda Im[ Gamma(s-1) (1 - i Omega t)^(1-s) ]
//   gamma1(t), beta=inf = lambda Gamma(s-1) [ 1 - Re (1 - i Omega t)^(1-s) ]
// from int_0^inf u^(nu-1) e^{-p u} du = Gamma(nu) p^-nu, continued to nu = s - 1 > -1.

#pragma once

#include <cmath>
#include <complex>

namespace ptq::testref {

inline double phi_power_law(double s, double lambda, double cutoff, double t) {
    const double tau = cutoff * t;
    if (s == 1.0) return lambda * std::atan(tau);
    const std::complex<double> p{1.0, -tau};
    return lambda * std::tgamma(s - 1.0) * std::pow(p, 1.0 - s).imag();
}

inline double gamma1_zero_temperature(double s, double lambda, double cutoff, double t) {
    const double tau = cutoff * t;
    if (s == 1.0) return 0.5 * lambda * std::log1p(tau * tau);
    const std::complex<double> p{1.0, -tau};
    return lambda * std::tgamma(s - 1.0) * (1.0 - std::pow(p, 1.0 - s).real());
}

inline double rel_diff(double x, double ref) {
    return std::abs(x - ref) / std::max(std::abs(ref), 1e-300);
}

} // namespace ptq::testref
