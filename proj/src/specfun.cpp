// specfun.cpp — coth, log-gamma (Lanczos, g = 7, n = 9), and 1 - cos

#include "ptq/specfun.hpp"

#include "ptq/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace ptq::specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// ln Gamma(z) for Re z >= 1/2. Only the real part is used by callers.
std::complex<double> lanczos_ln_gamma(std::complex<double> z) {
    z -= 1.0;
    std::complex<double> sum = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    const std::complex<double> t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// ln |sin(pi z)| without overflow for large |Im z|:
// |sin(pi z)|^2 = (cosh(2 pi y) - cos(2 pi x)) / 2.
double ln_abs_sin_pi(std::complex<double> z) {
    const double ay = std::abs(z.imag());
    if (ay < 1.0) {
        const double s = std::sin(std::numbers::pi * z.real());
        const double sh = std::sinh(std::numbers::pi * ay);
        return 0.5 * std::log(s * s + sh * sh);
    }
    const double e = std::exp(-2.0 * std::numbers::pi * ay);
    return std::numbers::pi * ay - std::numbers::ln2 +
           0.5 * std::log1p(-2.0 * std::cos(2.0 * std::numbers::pi * z.real()) * e + e * e);
}

} // namespace

double coth_stable(double x) {
    if (!(x > 0.0)) {
        throw DomainError("coth_stable: argument must be positive");
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < 1e-4) {
        return 1.0 / x + x / 3.0 - x * x * x / 45.0;
    }
    return 1.0 / std::tanh(x);
}

double x_coth_x(double x) {
    if (x < 0.0 || std::isnan(x)) {
        throw DomainError("x_coth_x: argument must be nonnegative");
    }
    if (x < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
    }
    if (std::isinf(x)) {
        return x;
    }
    return x / std::tanh(x);
}

double ln_abs_gamma(std::complex<double> z) {
    const double x = z.real();
    if (z.imag() == 0.0 && x <= 0.0 && x == std::floor(x)) {
        throw DomainError("ln_abs_gamma: pole at non-positive integer");
    }
    if (z.imag() == 0.0 && (x == 1.0 || x == 2.0)) {
        return 0.0;
    }
    if (x < 0.5) {
        // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return std::log(std::numbers::pi) - ln_abs_sin_pi(z) - lanczos_ln_gamma(1.0 - z).real();
    }
    return lanczos_ln_gamma(z).real();
}

double ln_gamma_real(double x) {
    if (!(x > 0.0)) {
        throw DomainError("ln_gamma_real: argument must be positive");
    }
    return ln_abs_gamma({x, 0.0});
}

double ln_abs_gamma_sq(double a, double b) {
    return 2.0 * ln_abs_gamma({1.0 + a, b});
}

double one_minus_cos(double x) {
    const double s = std::sin(0.5 * x);
    return 2.0 * s * s;
}

} // namespace ptq::specfun
