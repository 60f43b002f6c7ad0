// model.cpp — PT-symmetric qubit: spectrum and similarity transform

#include "ptq/model.hpp"

#include "ptq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ptq {

namespace {

constexpr cplx I{0.0, 1.0};

// D = (1/sqrt2) [[i, 1], [-i, 1]]
TwoLevelMatrix delta_matrix() {
    TwoLevelMatrix d;
    d << I, 1.0, -I, 1.0;
    return d / std::sqrt(2.0);
}

} // namespace

namespace pauli {

TwoLevelMatrix identity() { return TwoLevelMatrix::Identity(); }

TwoLevelMatrix sigma_x() {
    TwoLevelMatrix m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

TwoLevelMatrix sigma_y() {
    TwoLevelMatrix m;
    m << 0.0, -I, I, 0.0;
    return m;
}

TwoLevelMatrix sigma_z() {
    TwoLevelMatrix m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

} // namespace pauli

Hermiticity::Hermiticity(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha)) {
        throw DomainError("Hermiticity: alpha must be finite");
    }
}

bool Hermiticity::is_physical() const noexcept { return std::abs(alpha_) <= 1.0; }

double Hermiticity::energy_squared() const noexcept { return (1.0 - alpha_) * (1.0 + alpha_); }

double Hermiticity::energy() const {
    require_physical();
    return std::sqrt(std::max(0.0, energy_squared()));
}

void Hermiticity::require_physical() const {
    if (!is_physical()) {
        throw DomainError("Hermiticity: |alpha| > 1 is outside the real-spectrum regime (alpha = " +
                          std::to_string(alpha_) + ")");
    }
}

TwoLevelMatrix system_hamiltonian(const Hermiticity& h) {
    return I * h.alpha() * pauli::sigma_z() + pauli::sigma_x();
}

std::pair<cplx, cplx> eigenvalues(const Hermiticity& h) {
    const double e2 = h.energy_squared();
    if (e2 >= 0.0) {
        const double e = std::sqrt(e2);
        return {cplx{e, 0.0}, cplx{-e, 0.0}};
    }
    const double g = std::sqrt(-e2);
    return {cplx{0.0, g}, cplx{0.0, -g}};
}

SimilarityTransform build_transform(const Hermiticity& h) {
    const double a = h.alpha();
    if (std::abs(a) >= 1.0) {
        throw SingularTransform();
    }
    const double s_plus = std::sqrt(2.0 * (1.0 + a));
    const double s_minus = std::sqrt(2.0 * (1.0 - a));

    const TwoLevelMatrix d = delta_matrix();
    const TwoLevelMatrix d_dag = d.adjoint();

    TwoLevelMatrix diag = TwoLevelMatrix::Zero();
    diag(0, 0) = s_plus;
    diag(1, 1) = s_minus;
    TwoLevelMatrix diag_inv = TwoLevelMatrix::Zero();
    diag_inv(0, 0) = 1.0 / s_plus;
    diag_inv(1, 1) = 1.0 / s_minus;

    return SimilarityTransform(d_dag * diag * d, d_dag * diag_inv * d, a);
}

TwoLevelMatrix relabel_z_to_x(const TwoLevelMatrix& rho) {
    TwoLevelMatrix had;
    had << 1.0, 1.0, 1.0, -1.0;
    had /= std::sqrt(2.0);
    return had * rho * had;
}

TwoLevelMatrix pt_frame(const TwoLevelMatrix& rho, const SimilarityTransform& t) {
    return t.inverse() * rho * t.matrix();
}

DensityCheck check_density(const TwoLevelMatrix& rho) {
    DensityCheck c;
    c.hermiticity_error = max_abs_diff(rho, rho.adjoint());
    c.trace_error = std::abs(rho.trace() - 1.0);

    // Smallest eigenvalue of the Hermitian part.
    const double p = rho(0, 0).real();
    const double q = rho(1, 1).real();
    const cplx off = 0.5 * (rho(0, 1) + std::conj(rho(1, 0)));
    const double half_gap = std::hypot(0.5 * (p - q), std::abs(off));
    c.min_eigenvalue = 0.5 * (p + q) - half_gap;
    return c;
}

double max_abs_diff(const TwoLevelMatrix& a, const TwoLevelMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace ptq
