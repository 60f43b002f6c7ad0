// oracle.hpp — Independent ground truth for the analytic decoherence formulas
//
//  * Discrete-mode sums: the bath replaced by an explicit list of modes (w_k, 4|g_k|^2).
//  * Fock-exact evolution: the spin-boson Hamiltonian with at most three modes,
//    truncated at n_cut quanta per mode, diagonalized densely and evolved exactly.

#pragma once

#include "ptq/decoherence.hpp"
#include "ptq/model.hpp"
#include "ptq/quadrature.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace ptq::oracle {

struct Mode {
    double omega;  // > 0
    double g_sq;   // 4 |g_k|^2
};

class DiscreteBath {
public:
    // Modes must have strictly ascending positive frequencies and finite nonnegative weights.
    explicit DiscreteBath(std::vector<Mode> modes);

    const std::vector<Mode>& modes() const noexcept { return modes_; }
    std::size_t size() const noexcept { return modes_.size(); }

private:
    std::vector<Mode> modes_;
};

// Mesh exponent used by discretize() when none is given: 2/s for s < 1, else 1.
double default_grading(const SpectralDensity& sd);

// Midpoint modes of the mesh w = omega_max * x^q, x uniform on [0, 1] in K cells,
// weights g_sq_k = J(w_k) * (dw/dx) / K. q = 1 is the uniform midpoint rule
// w_k = (k - 1/2) dw, g_sq_k = J(w_k) dw; q > 1 crowds modes towards w = 0, which
// keeps the sub-ohmic w^(s-1) weight integrable cell by cell.
DiscreteBath discretize(const SpectralDensity& sd, std::size_t K, double omega_max, double grading);
DiscreteBath discretize(const SpectralDensity& sd, std::size_t K, double omega_max);

// (1 - alpha^2) sum_k g_sq_k coth(beta w_k / 2) (1 - cos w_k t) / w_k^2
double gamma1_discrete(const DiscreteBath& bath, double beta, const Hermiticity& h, double t);

// sum_k g_sq_k sin(w_k t) / w_k^2
double phi_discrete(const DiscreteBath& bath, double t);

// Per-mode Fock truncation.
struct FockConfig {
    std::size_t n_cut{20};
    std::size_t modes_used{1};

    FockConfig() = default;
    FockConfig(std::size_t n_cut, std::size_t modes_used);
};

// Thermal weight above the cutoff, P(n > n_cut) = exp(-beta w (n_cut + 1)).
double thermal_tail_weight(double omega, double beta, std::size_t n_cut);

constexpr std::size_t kMaxFockDimension = 4096;
constexpr double kFockTailLimit = 1e-8;

// Exact reduced dynamics of the qubit coupled to the first fc.modes_used modes of a bath.
// The diagonalization is built once; evaluations at different times are const and
// may run concurrently.
class FockOracle {
public:
    FockOracle(const DiscreteBath& bath, const FockConfig& fc, double beta, const Hermiticity& h,
               const QubitPureState& state, bool correlated);

    // Interaction-picture reduced density matrix. Hermiticity, unit trace, positivity and
    // constant populations are verified on every call (OracleError on violation).
    TwoLevelMatrix reduced(double t) const;

    // rho_s(0, 1) in the interaction picture; analytically equal to a b* F(t).
    cplx coherence(double t) const { return reduced(t)(0, 1); }

    std::size_t dimension() const noexcept { return 2 * block_dim_; }

private:
    struct Pair {
        Eigen::MatrixXd weights;  // (U_j^T U_i)[m,n] * (U_i^T rho_B U_j)[n,m]
    };

    cplx block_trace(std::size_t i, std::size_t j, double t) const;

    std::size_t block_dim_{0};
    double energy_{0.0};
    std::array<cplx, 2> amplitude_{};
    std::array<Eigen::VectorXd, 2> eigenvalues_;
    std::array<std::array<Pair, 2>, 2> pairs_;
    std::array<double, 2> populations0_{};
};

cplx fock_exact_offdiag(const DiscreteBath& bath, const FockConfig& fc, double beta,
                        const Hermiticity& h, const QubitPureState& state, bool correlated, double t);

} // namespace ptq::oracle
