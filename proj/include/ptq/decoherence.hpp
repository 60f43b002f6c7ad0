// decoherence.hpp — Exact dephasing of the PT-symmetric qubit in its spin-boson frame
//
// Decoherence function gamma1 (bath fluctuations), phase integral Phi, correlation
// decoherence gamma_c, phase chi, coherence factor F = e^{i chi} e^{-gamma1 - gamma_c},
// and the reduced density matrices for factorized and measurement-correlated
// initial states.

#pragma once

#include "ptq/model.hpp"
#include "ptq/quadrature.hpp"

#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace ptq {

// a|0> + b|1>, |0> being the sigma_z = +1 state.
class QubitPureState {
public:
    QubitPureState(cplx a, cplx b);

    // Real amplitudes with the requested <sigma_z>.
    static QubitPureState from_sz(double sz);

    cplx a() const noexcept { return a_; }
    cplx b() const noexcept { return b_; }
    double sz() const noexcept { return std::norm(a_) - std::norm(b_); }

    TwoLevelMatrix projector() const;

private:
    cplx a_;
    cplx b_;
};

// Qubit level splitting omega0 in the spin-boson frame; mu = omega0 / 2.
class QubitSplitting {
public:
    explicit QubitSplitting(double omega0);

    // omega0 = 2 sqrt(1 - alpha^2), the splitting of the transformed Hamiltonian itself.
    // Zero at the exceptional point.
    static QubitSplitting consistent(const Hermiticity& h);

    double omega0() const noexcept { return omega0_; }
    double mu() const noexcept { return 0.5 * omega0_; }

private:
    struct Unchecked {};
    QubitSplitting(double omega0, Unchecked) : omega0_(omega0) {}
    double omega0_;
};

// Inverse temperature; +inf is zero temperature.
class ThermalBath {
public:
    explicit ThermalBath(double beta);
    static ThermalBath zero_temperature();

    double beta() const noexcept { return beta_; }
    bool is_zero_temperature() const noexcept { return std::isinf(beta_); }

private:
    double beta_;
};

struct DecoherenceTrace {
    std::vector<double> times;
    std::vector<double> gamma1;
    std::vector<double> gamma_c;
    std::vector<double> phi;
    std::vector<double> chi;     // unwrapped across samples
    std::vector<cplx> F;
    std::vector<cplx> rho01;
    double population0{1.0};     // |a|^2, constant in time
    double population1{0.0};     // |b|^2

    std::size_t size() const noexcept { return times.size(); }
    TwoLevelMatrix rho(std::size_t i) const;
};

// (1 - alpha^2) * gamma1 kernel integral. Exactly zero at |alpha| = 1.
double gamma1(const SpectralDensity& sd, const ThermalBath& bath, const Hermiticity& h, double t,
              const QuadratureSpec& q = {});

// Ohmic (s = 1) closed form of gamma1, including the (1 - alpha^2) prefactor.
double gamma1_ohmic_closed(double lambda1, double cutoff, const ThermalBath& bath,
                           const Hermiticity& h, double t);

// Phi(t) = int J(w) sin(w t) / w^2 dw; ohmic densities use lambda * atan(Omega t).
double phi(const SpectralDensity& sd, double t, const QuadratureSpec& q = {});

// r = (sinh x - sz cosh x) / (cosh x - sz sinh x), x = beta omega0 / 2.
double correlation_ratio(const QubitSplitting& split, const ThermalBath& bath, double sz);

double gamma_c(double phi_val, const Hermiticity& h, const QubitSplitting& split,
               const ThermalBath& bath, double sz);

// Continuous phase of cos(theta) - i r sin(theta), theta = (1 - alpha^2) Phi.
// Satisfies tan(chi) = -r tan(theta).
double chi(double phi_val, const Hermiticity& h, const QubitSplitting& split,
           const ThermalBath& bath, double sz);

// F from the weighted-exponential ratio, given precomputed gamma1 and Phi.
// Shared by the continuum path and the discrete-bath comparisons.
cplx coherence_factor_from(double gamma1_val, double phi_val, const Hermiticity& h,
                           const QubitSplitting& split, const ThermalBath& bath,
                           const QubitPureState& state);

cplx coherence_factor(const SpectralDensity& sd, const ThermalBath& bath, const Hermiticity& h,
                      const QubitSplitting& split, const QubitPureState& state, double t,
                      const QuadratureSpec& q = {});

// [[|a|^2, a b* factor], [a* b factor*, |b|^2]]
TwoLevelMatrix assemble_rho(const QubitPureState& state, cplx factor);

TwoLevelMatrix reduced_rho_uncorrelated(const QubitPureState& state, const SpectralDensity& sd,
                                        const ThermalBath& bath, const Hermiticity& h, double t,
                                        const QuadratureSpec& q = {});

TwoLevelMatrix reduced_rho_correlated(const QubitPureState& state, const SpectralDensity& sd,
                                      const ThermalBath& bath, const Hermiticity& h,
                                      const QubitSplitting& split, double t,
                                      const QuadratureSpec& q = {});

// Evaluates every quantity on an ascending time grid. For correlated = false the
// correlation terms are zero and F = e^{-gamma1}.
DecoherenceTrace trace(const SpectralDensity& sd, const ThermalBath& bath, const Hermiticity& h,
                       const QubitSplitting& split, const QubitPureState& state,
                       std::span<const double> times, bool correlated,
                       const QuadratureSpec& q = {});

// Unwraps a sequence of principal-branch phases in place.
void unwrap_phase(std::span<double> phases);

} // namespace ptq
