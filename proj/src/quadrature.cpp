// quadrature.cpp — Adaptive Gauss-Kronrod evaluation of the bath integrals

#include "ptq/quadrature.hpp"

#include "ptq/errors.hpp"
#include "ptq/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace ptq {

SpectralDensity::SpectralDensity(double s, double lambda, double cutoff)
    : s_(s), lambda_(lambda), cutoff_(cutoff) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("SpectralDensity: exponent s must be positive and finite");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("SpectralDensity: coupling lambda must be nonnegative and finite");
    }
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
        throw DomainError("SpectralDensity: cutoff Omega must be positive and finite");
    }
}

double SpectralDensity::operator()(double omega) const {
    if (omega <= 0.0) {
        return 0.0;
    }
    const double u = omega / cutoff_;
    return lambda_ * std::pow(u, s_) * cutoff_ * std::exp(-u);
}

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError("QuadratureSpec: tolerances must be positive");
    }
    if (max_panels < 8) {
        throw DomainError("QuadratureSpec: max_panels must be at least 8");
    }
}

double truncation_point(const SpectralDensity& sd, const QuadratureSpec& q) {
    return 40.0 + std::log(1.0 / q.abs_tol) + 2.0 * std::max(0.0, sd.s() - 2.0);
}

namespace {

// ---------------------------- Gauss-Kronrod 7/15 ----------------------------

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

using Integrand = std::function<double(double)>;

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const {
        // ties broken by position so the refinement order never depends on heap internals
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;
    }
};

Segment gauss_kronrod_15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);

    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double pair = f1[j] + f2[j];
        res_k += kWgk[j] * pair;
        res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            res_g += kWg[j / 2] * pair;
        }
    }
    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double ah = std::abs(half);
    double err = std::abs((res_k - res_g) * half);
    res_abs *= ah;
    res_asc *= ah;
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * res_abs, err);
    }
    return {a, b, res_k * half, err};
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t mid = xs.size() / 2;
    return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

// One integrand per (mapped?) region: the first panel of a sub-ohmic density is
// integrated in v with its own callable.
struct Region {
    Integrand f;
    double a;
    double b;
};

Integral adaptive(std::vector<Region> regions, double width, double tail_bound,
                  const QuadratureSpec& q, const char* label) {
    // Tag each segment with its region so bisection reuses the right integrand.
    struct Tagged {
        Segment seg;
        std::size_t region;
    };
    struct TaggedByError {
        bool operator()(const Tagged& x, const Tagged& y) const { return ByError{}(x.seg, y.seg); }
    };
    std::priority_queue<Tagged, std::vector<Tagged>, TaggedByError> heap;

    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        const auto& reg = regions[r];
        const std::size_t n = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil((reg.b - reg.a) / width - 1e-9)));
        const double h = (reg.b - reg.a) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = reg.a + h * static_cast<double>(i);
            const double hi = (i + 1 == n) ? reg.b : reg.a + h * static_cast<double>(i + 1);
            const Segment s = gauss_kronrod_15(reg.f, lo, hi);
            total += s.value;
            total_err += s.error;
            heap.push({s, r});
        }
    }

    std::size_t splits = 0;
    auto target = [&] { return std::max(q.abs_tol, q.rel_tol * std::abs(total)); };
    while (total_err + tail_bound > target()) {
        if (splits >= q.max_panels) {
            std::ostringstream msg;
            msg << label << ": no convergence after " << splits << " refinements (estimate "
                << total << ", error bound " << total_err + tail_bound << ")";
            throw QuadratureError(msg.str(), total, total_err + tail_bound);
        }
        const Tagged worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.seg.a + worst.seg.b);
        const auto& f = regions[worst.region].f;
        const Segment left = gauss_kronrod_15(f, worst.seg.a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst.seg.b);
        total += left.value + right.value - worst.seg.value;
        total_err += left.error + right.error - worst.seg.error;
        heap.push({left, worst.region});
        heap.push({right, worst.region});
        ++splits;
    }

    // Deterministic final sum: ascending (region, position), pairwise.
    std::vector<Tagged> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) {
        if (x.region != y.region) return x.region < y.region;
        return x.seg.a < y.seg.a;
    });
    std::vector<double> values;
    values.reserve(all.size());
    double err = 0.0;
    for (const auto& t : all) {
        values.push_back(t.seg.value);
        err += t.seg.error;
    }
    return {pairwise_sum(values), err + tail_bound, all.size()};
}

// Bound on int_U^inf u^p e^-u du.
double gamma_tail(double p, double upper) {
    const double base = std::pow(upper, p) * std::exp(-upper);
    if (p <= 0.0) return base;
    return base / (1.0 - p / upper);
}

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("bath integral: time must be finite and nonnegative");
    }
}

// Integrates lambda * u^(s-1) * k(u) over [0, U_max].
Integral integrate_scaled(const SpectralDensity& sd, double tau, std::function<double(double)> k,
                          double tail_amplitude, const QuadratureSpec& q, const char* label) {
    q.validate();
    const double s = sd.s();
    const double lam = sd.lambda();
    const double upper = truncation_point(sd, q);
    const double width = tau > 2.0 ? std::numbers::pi / tau : 1.0;
    const double first = std::min(width, upper);

    std::vector<Region> regions;
    if (s < 1.0) {
        // u = v^(1/s): u^(s-1) du = dv / s
        const double inv_s = 1.0 / s;
        regions.push_back({[=](double v) { return lam * inv_s * k(std::pow(v, inv_s)); }, 0.0,
                           std::pow(first, s)});
    } else {
        regions.push_back({[=](double u) { return lam * std::pow(u, s - 1.0) * k(u); }, 0.0, first});
    }
    if (first < upper) {
        regions.push_back({[=](double u) { return lam * std::pow(u, s - 1.0) * k(u); }, first, upper});
    }

    const double tail = lam * tail_amplitude * gamma_tail(s - 2.0, upper);
    return adaptive(std::move(regions), width, tail, q, label);
}

} // namespace

Integral gamma1_kernel_integral(const SpectralDensity& sd, double beta, double t,
                                const QuadratureSpec& q) {
    require_time(t);
    if (!(beta > 0.0)) {
        throw DomainError("gamma1 kernel: beta must be positive (use +inf for zero temperature)");
    }
    if (t == 0.0 || sd.lambda() == 0.0) {
        return {};
    }
    const double tau = sd.cutoff() * t;
    const bool zero_temperature = std::isinf(beta);
    // c u = beta w / 2
    const double c = zero_temperature ? 0.0 : 0.5 * beta * sd.cutoff();

    // k(u) = e^-u * u coth(c u) * (1 - cos tau u) / u^2
    auto k = [=](double u) {
        if (u == 0.0) {
            return zero_temperature ? 0.0 : 0.5 * tau * tau / c;
        }
        const double u_coth = zero_temperature ? u : specfun::x_coth_x(c * u) / c;
        const double sn = std::sin(0.5 * tau * u) / u;
        return std::exp(-u) * u_coth * 2.0 * sn * sn;
    };
    const double upper = truncation_point(sd, q);
    const double coth_max = zero_temperature ? 1.0 : specfun::coth_stable(c * upper);
    return integrate_scaled(sd, tau, k, 2.0 * coth_max, q, "gamma1 kernel");
}

Integral phi_kernel_integral(const SpectralDensity& sd, double t, const QuadratureSpec& q) {
    require_time(t);
    if (t == 0.0 || sd.lambda() == 0.0) {
        return {};
    }
    const double tau = sd.cutoff() * t;
    // k(u) = e^-u sin(tau u) / u
    auto k = [=](double u) {
        if (u == 0.0) return tau;
        return std::exp(-u) * std::sin(tau * u) / u;
    };
    return integrate_scaled(sd, tau, k, 1.0, q, "phi kernel");
}

} // namespace ptq
