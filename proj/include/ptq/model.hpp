// model.hpp — PT-symmetric qubit Hamiltonian, spectrum, and the similarity transform
// to its Hermitian (spin-boson) frame.
//
// Basis convention used throughout the library: index 0 is the sigma_z = +1 state,
// index 1 is sigma_z = -1. A pure state a|0> + b|1> therefore has <sigma_z> = |a|^2 - |b|^2.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>

namespace ptq {

using cplx = std::complex<double>;
using TwoLevelMatrix = Eigen::Matrix2cd;

namespace pauli {
TwoLevelMatrix identity();
TwoLevelMatrix sigma_x();
TwoLevelMatrix sigma_y();
TwoLevelMatrix sigma_z();
} // namespace pauli

// Coefficient of the anti-Hermitian part i*alpha*sigma_z in H_S = i*alpha*sigma_z + sigma_x.
// Any real alpha is representable; decoherence code requires |alpha| <= 1.
class Hermiticity {
public:
    constexpr Hermiticity() = default;
    explicit Hermiticity(double alpha);

    double alpha() const noexcept { return alpha_; }

    // |alpha| <= 1: real spectrum.
    bool is_physical() const noexcept;

    // 1 - alpha^2, computed as (1 - alpha)(1 + alpha). Negative outside the physical regime.
    double energy_squared() const noexcept;

    // E = sqrt(1 - alpha^2); throws DomainError if |alpha| > 1.
    double energy() const;

    // Throws DomainError unless |alpha| <= 1.
    void require_physical() const;

private:
    double alpha_{0.0};
};

// The non-Hermitian system Hamiltonian H_S = i*alpha*sigma_z + sigma_x.
TwoLevelMatrix system_hamiltonian(const Hermiticity& h);

// Eigenvalues (E+, E-) of H_S: +-sqrt(1 - alpha^2) for |alpha| <= 1, +-i*sqrt(alpha^2 - 1) otherwise.
std::pair<cplx, cplx> eigenvalues(const Hermiticity& h);

// T = D^dagger diag(s+, s-) D with s+- = sqrt(2(1 +- alpha)), D = (1/sqrt2)[[i, 1], [-i, 1]].
// T H_S T^-1 = E sigma_x.
class SimilarityTransform {
public:
    const TwoLevelMatrix& matrix() const noexcept { return matrix_; }
    const TwoLevelMatrix& inverse() const noexcept { return inverse_; }
    double alpha() const noexcept { return alpha_; }

    // T A T^-1
    TwoLevelMatrix conjugate(const TwoLevelMatrix& a) const { return matrix_ * a * inverse_; }

private:
    friend SimilarityTransform build_transform(const Hermiticity& h);
    SimilarityTransform(TwoLevelMatrix m, TwoLevelMatrix inv, double alpha)
        : matrix_(std::move(m)), inverse_(std::move(inv)), alpha_(alpha) {}

    TwoLevelMatrix matrix_;
    TwoLevelMatrix inverse_;
    double alpha_;
};

// Throws SingularTransform for |alpha| >= 1.
SimilarityTransform build_transform(const Hermiticity& h);

// Hadamard relabel between the sigma_z (spin-boson) basis and the sigma_x basis that
// T produces. Apply this to a spin-boson-frame rho before pt_frame.
TwoLevelMatrix relabel_z_to_x(const TwoLevelMatrix& rho);

// T^-1 rho T. Preserves the trace; the result is in general not Hermitian.
TwoLevelMatrix pt_frame(const TwoLevelMatrix& rho, const SimilarityTransform& t);

struct DensityCheck {
    double hermiticity_error{0.0};  // max |rho - rho^dagger|
    double trace_error{0.0};        // |tr rho - 1|
    double min_eigenvalue{0.0};

    bool valid(double tol) const noexcept {
        return hermiticity_error <= tol && trace_error <= tol && min_eigenvalue >= -tol;
    }
};

DensityCheck check_density(const TwoLevelMatrix& rho);

inline bool is_density_matrix(const TwoLevelMatrix& rho, double tol = 1e-12) {
    return check_density(rho).valid(tol);
}

// Entrywise max |a - b|.
double max_abs_diff(const TwoLevelMatrix& a, const TwoLevelMatrix& b);

} // namespace ptq
