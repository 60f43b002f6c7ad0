// quadrature.hpp — Semi-infinite bath integrals over a power-law spectral density
//
//   gamma1 kernel:  int_0^inf J(w) coth(beta w / 2) (1 - cos w t) / w^2 dw
//   phi kernel:     int_0^inf J(w) sin(w t) / w^2 dw
//
// Both are evaluated in u = w / Omega. The range [0, U_max] is cut into panels of
// width pi / (Omega t) once Omega t > 2 (width 1 otherwise) and refined by a globally
// adaptive 15-point Gauss-Kronrod scheme. For s < 1 the first panel is mapped through
// u = v^(1/s), which cancels the u^(s-1) endpoint singularity exactly.

#pragma once

#include <cstddef>

namespace ptq {

// J(w) = lambda * (w / Omega)^s * Omega * exp(-w / Omega).
class SpectralDensity {
public:
    SpectralDensity(double s, double lambda, double cutoff);

    double s() const noexcept { return s_; }
    double lambda() const noexcept { return lambda_; }
    double cutoff() const noexcept { return cutoff_; }

    bool is_ohmic() const noexcept { return s_ == 1.0; }

    double operator()(double omega) const;

private:
    double s_;
    double lambda_;
    double cutoff_;
};

struct QuadratureSpec {
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    // Bisections allowed on top of the initial oscillation partition.
    std::size_t max_panels{4096};

    void validate() const;
};

struct Integral {
    double value{0.0};
    double error{0.0};          // quadrature estimate plus truncation tail bound
    std::size_t segments{0};    // final number of Gauss-Kronrod segments
};

// beta = +inf selects zero temperature (coth -> 1).
Integral gamma1_kernel_integral(const SpectralDensity& sd, double beta, double t,
                                const QuadratureSpec& q = {});
Integral phi_kernel_integral(const SpectralDensity& sd, double t, const QuadratureSpec& q = {});

inline double integrate_gamma1_kernel(const SpectralDensity& sd, double beta, double t,
                                      const QuadratureSpec& q = {}) {
    return gamma1_kernel_integral(sd, beta, t, q).value;
}

inline double integrate_phi_kernel(const SpectralDensity& sd, double t, const QuadratureSpec& q = {}) {
    return phi_kernel_integral(sd, t, q).value;
}

// Upper cutoff in units of Omega: 40 + ln(1/abs_tol), widened for s > 2.
double truncation_point(const SpectralDensity& sd, const QuadratureSpec& q);

} // namespace ptq
