// decoherence.cpp — gamma1, Phi, gamma_c, chi, F and reduced density matrices

#include "ptq/decoherence.hpp"

#include "ptq/errors.hpp"
#include "ptq/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace ptq {

namespace {

constexpr double kNormTol = 1e-12;

// x = beta * omega0 / 2, with 0 * inf treated as 0.
double half_thermal_splitting(const QubitSplitting& split, const ThermalBath& bath) {
    if (split.omega0() == 0.0) return 0.0;
    return 0.5 * bath.beta() * split.omega0();
}

void require_sz(double sz) {
    if (!(std::abs(sz) <= 1.0)) {
        throw DomainError("<sigma_z> must lie in [-1, 1]");
    }
}

} // namespace

// ------------------------------- Domain types -------------------------------

QubitPureState::QubitPureState(cplx a, cplx b) : a_(a), b_(b) {
    const double norm = std::norm(a) + std::norm(b);
    if (!(std::abs(norm - 1.0) <= kNormTol)) {
        std::ostringstream msg;
        msg << "QubitPureState: |a|^2 + |b|^2 = " << norm << " is not 1";
        throw DomainError(msg.str());
    }
}

QubitPureState QubitPureState::from_sz(double sz) {
    require_sz(sz);
    return QubitPureState(std::sqrt(0.5 * (1.0 + sz)), std::sqrt(0.5 * (1.0 - sz)));
}

TwoLevelMatrix QubitPureState::projector() const {
    TwoLevelMatrix p;
    p << std::norm(a_), a_ * std::conj(b_), b_ * std::conj(a_), std::norm(b_);
    return p;
}

QubitSplitting::QubitSplitting(double omega0) : omega0_(omega0) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
        throw DomainError("QubitSplitting: omega0 must be positive and finite");
    }
}

QubitSplitting QubitSplitting::consistent(const Hermiticity& h) {
    return QubitSplitting(2.0 * h.energy(), Unchecked{});
}

ThermalBath::ThermalBath(double beta) : beta_(beta) {
    if (!(beta > 0.0)) {
        throw DomainError("ThermalBath: beta must be positive (+inf for zero temperature)");
    }
}

ThermalBath ThermalBath::zero_temperature() {
    return ThermalBath(std::numeric_limits<double>::infinity());
}

TwoLevelMatrix DecoherenceTrace::rho(std::size_t i) const {
    TwoLevelMatrix m;
    m << population0, rho01.at(i), std::conj(rho01.at(i)), population1;
    return m;
}

// ------------------------------ Decoherence core ----------------------------

double gamma1(const SpectralDensity& sd, const ThermalBath& bath, const Hermiticity& h, double t,
              const QuadratureSpec& q) {
    h.require_physical();
    const double e2 = h.energy_squared();
    if (e2 == 0.0) {
        return 0.0;
    }
    return e2 * integrate_gamma1_kernel(sd, bath.beta(), t, q);
}

double gamma1_ohmic_closed(double lambda1, double cutoff, const ThermalBath& bath,
                           const Hermiticity& h, double t) {
    h.require_physical();
    if (!(cutoff > 0.0)) {
        throw DomainError("gamma1_ohmic_closed: cutoff must be positive");
    }
    const double e2 = h.energy_squared();
    if (e2 == 0.0 || t == 0.0) {
        return 0.0;
    }
    const double ct = cutoff * t;
    double value = 0.5 * lambda1 * std::log1p(ct * ct);
    if (!bath.is_zero_temperature()) {
        const double a = 1.0 / (cutoff * bath.beta());
        const double thermal = specfun::ln_gamma_real(1.0 + a) -
                               0.5 * specfun::ln_abs_gamma_sq(a, t / bath.beta());
        value += 2.0 * lambda1 * thermal;
    }
    return std::max(0.0, e2 * value);
}

double phi(const SpectralDensity& sd, double t, const QuadratureSpec& q) {
    if (sd.is_ohmic()) {
        if (!(t >= 0.0)) {
            throw DomainError("phi: time must be nonnegative");
        }
        return sd.lambda() * std::atan(sd.cutoff() * t);
    }
    return integrate_phi_kernel(sd, t, q);
}

double correlation_ratio(const QubitSplitting& split, const ThermalBath& bath, double sz) {
    require_sz(sz);
    const double th = std::tanh(half_thermal_splitting(split, bath));
    const double den = 1.0 - sz * th;
    if (den == 0.0) {
        // sz = th = +-1: limit of (th - sz) / (1 - sz th) along th -> 1
        return -sz;
    }
    return (th - sz) / den;
}

double gamma_c(double phi_val, const Hermiticity& h, const QubitSplitting& split,
               const ThermalBath& bath, double sz) {
    h.require_physical();
    require_sz(sz);
    const double e2 = h.energy_squared();
    if (e2 == 0.0 || std::abs(sz) == 1.0) {
        return 0.0;
    }
    const double x = half_thermal_splitting(split, bath);
    const double sech = 1.0 / std::cosh(x);
    const double den = 1.0 - sz * std::tanh(x);
    const double weight = (1.0 - sz * sz) * sech * sech / (den * den);
    const double sn = std::sin(e2 * phi_val);
    const double reduction = weight * sn * sn;
    if (!(reduction < 1.0)) {
        throw DomainError("gamma_c: logarithm argument is not positive");
    }
    return -0.5 * std::log1p(-reduction);
}

double chi(double phi_val, const Hermiticity& h, const QubitSplitting& split,
           const ThermalBath& bath, double sz) {
    h.require_physical();
    const double r = correlation_ratio(split, bath, sz);
    const double theta = h.energy_squared() * phi_val;
    if (theta == 0.0) {
        return 0.0;
    }
    // theta = k pi + reduced, reduced in [-pi/2, pi/2)
    const double k = std::floor(theta / std::numbers::pi + 0.5);
    const double reduced = theta - k * std::numbers::pi;
    const double winding = r >= 0.0 ? 1.0 : -1.0;
    return -std::atan(r * std::tan(reduced)) - winding * k * std::numbers::pi;
}

cplx coherence_factor_from(double gamma1_val, double phi_val, const Hermiticity& h,
                           const QubitSplitting& split, const ThermalBath& bath,
                           const QubitPureState& state) {
    h.require_physical();
    const double e2 = h.energy_squared();
    if (e2 == 0.0) {
        return {1.0, 0.0};
    }
    const double theta = e2 * phi_val;
    const double wa = std::norm(state.a());
    const double wb = std::norm(state.b());
    const double x = half_thermal_splitting(split, bath);

    // p = |a|^2 e^-x / (|a|^2 e^-x + |b|^2 e^x), evaluated without overflow
    double p;
    if (wa == 0.0) {
        p = 0.0;
    } else if (wb == 0.0) {
        p = 1.0;
    } else {
        p = 1.0 / (1.0 + std::exp(std::log(wb) - std::log(wa) + 2.0 * x));
    }
    const cplx ratio{std::cos(theta), (2.0 * p - 1.0) * std::sin(theta)};
    return ratio * std::exp(-gamma1_val);
}

cplx coherence_factor(const SpectralDensity& sd, const ThermalBath& bath, const Hermiticity& h,
                      const QubitSplitting& split, const QubitPureState& state, double t,
                      const QuadratureSpec& q) {
    h.require_physical();
    if (h.energy_squared() == 0.0) {
        return {1.0, 0.0};
    }
    const double g1 = gamma1(sd, bath, h, t, q);
    return coherence_factor_from(g1, phi(sd, t, q), h, split, bath, state);
}

TwoLevelMatrix assemble_rho(const QubitPureState& state, cplx factor) {
    const cplx off = state.a() * std::conj(state.b()) * factor;
    TwoLevelMatrix m;
    m << std::norm(state.a()), off, std::conj(off), std::norm(state.b());
    return m;
}

TwoLevelMatrix reduced_rho_uncorrelated(const QubitPureState& state, const SpectralDensity& sd,
                                        const ThermalBath& bath, const Hermiticity& h, double t,
                                        const QuadratureSpec& q) {
    return assemble_rho(state, std::exp(-gamma1(sd, bath, h, t, q)));
}

TwoLevelMatrix reduced_rho_correlated(const QubitPureState& state, const SpectralDensity& sd,
                                      const ThermalBath& bath, const Hermiticity& h,
                                      const QubitSplitting& split, double t,
                                      const QuadratureSpec& q) {
    return assemble_rho(state, coherence_factor(sd, bath, h, split, state, t, q));
}

void unwrap_phase(std::span<double> phases) {
    for (std::size_t i = 1; i < phases.size(); ++i) {
        const double step = std::remainder(phases[i] - phases[i - 1], 2.0 * std::numbers::pi);
        phases[i] = phases[i - 1] + step;
    }
}

DecoherenceTrace trace(const SpectralDensity& sd, const ThermalBath& bath, const Hermiticity& h,
                       const QubitSplitting& split, const QubitPureState& state,
                       std::span<const double> times, bool correlated, const QuadratureSpec& q) {
    h.require_physical();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1])) {
            throw DomainError("trace: times must be nonnegative and ascending");
        }
    }

    DecoherenceTrace out;
    const std::size_t n = times.size();
    out.times.assign(times.begin(), times.end());
    out.gamma1.resize(n);
    out.gamma_c.resize(n);
    out.phi.resize(n);
    out.chi.resize(n);
    out.F.resize(n);
    out.rho01.resize(n);
    out.population0 = std::norm(state.a());
    out.population1 = std::norm(state.b());

    const double sz = state.sz();
    const double e2 = h.energy_squared();
    const cplx ab = state.a() * std::conj(state.b());
    for (std::size_t i = 0; i < n; ++i) {
        const double t = times[i];
        try {
            out.gamma1[i] = gamma1(sd, bath, h, t, q);
            out.phi[i] = phi(sd, t, q);
        } catch (const QuadratureError& e) {
            std::ostringstream msg;
            msg << "trace failed at t = " << t << ": " << e.what();
            throw QuadratureError(msg.str(), e.estimate(), e.error_bound());
        }
        if (correlated) {
            out.gamma_c[i] = gamma_c(out.phi[i], h, split, bath, sz);
            out.F[i] = coherence_factor_from(out.gamma1[i], out.phi[i], h, split, bath, state);
            // principal phase of the ratio; unwrapped below
            const double theta = e2 * out.phi[i];
            const double r = correlation_ratio(split, bath, sz);
            out.chi[i] = std::atan2(-r * std::sin(theta), std::cos(theta));
        } else {
            out.gamma_c[i] = 0.0;
            out.F[i] = std::exp(-out.gamma1[i]);
            out.chi[i] = 0.0;
        }
        out.rho01[i] = ab * out.F[i];
    }
    if (correlated && n > 0) {
        // anchor the unwrapped sequence on the continuous branch through chi(0) = 0
        const double anchor = chi(out.phi[0], h, split, bath, sz);
        const double shift = anchor - out.chi[0];
        unwrap_phase(out.chi);
        for (double& c : out.chi) c += shift;
    }
    return out;
}

} // namespace ptq
