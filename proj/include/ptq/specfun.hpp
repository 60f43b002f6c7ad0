// specfun.hpp — Special functions for the decoherence formulas
//
// Zero temperature is passed as beta = +infinity; coth_stable(inf) == 1.

#pragma once

#include <complex>

namespace ptq::specfun {

// coth(x) for x > 0 (x = +inf allowed). Series 1/x + x/3 - x^3/45 below 1e-4.
double coth_stable(double x);

// x * coth(x) for x >= 0, continuous at 0 (value 1). x = +inf gives +inf.
double x_coth_x(double x);

// ln Gamma(x) for x > 0.
double ln_gamma_real(double x);

// Re ln Gamma(z) = ln |Gamma(z)|. Throws DomainError at the poles z = 0, -1, -2, ...
double ln_abs_gamma(std::complex<double> z);

// ln |Gamma(1 + a + i b)|^2.
double ln_abs_gamma_sq(double a, double b);

// 1 - cos(x) evaluated as 2 sin^2(x/2).
double one_minus_cos(double x);

} // namespace ptq::specfun
