// oracle.cpp — Discrete-mode sums and Fock-truncated exact evolution

#include "ptq/oracle.hpp"

#include "ptq/errors.hpp"
#include "ptq/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace ptq::oracle {

// ------------------------------ Discrete bath -------------------------------

DiscreteBath::DiscreteBath(std::vector<Mode> modes) : modes_(std::move(modes)) {
    for (std::size_t k = 0; k < modes_.size(); ++k) {
        const auto& m = modes_[k];
        if (!(m.omega > 0.0) || !std::isfinite(m.omega)) {
            throw DomainError("DiscreteBath: mode frequencies must be positive and finite");
        }
        if (!(m.g_sq >= 0.0) || !std::isfinite(m.g_sq)) {
            throw DomainError("DiscreteBath: coupling weights must be finite and nonnegative");
        }
        if (k > 0 && !(m.omega > modes_[k - 1].omega)) {
            throw DomainError("DiscreteBath: mode frequencies must be strictly ascending");
        }
    }
}

double default_grading(const SpectralDensity& sd) {
    return sd.s() < 1.0 ? 2.0 / sd.s() : 1.0;
}

DiscreteBath discretize(const SpectralDensity& sd, std::size_t K, double omega_max, double grading) {
    if (K == 0) {
        throw DomainError("discretize: K must be at least 1");
    }
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
        throw DomainError("discretize: omega_max must be positive and finite");
    }
    if (!(grading >= 1.0) || !std::isfinite(grading)) {
        throw DomainError("discretize: grading exponent must be >= 1");
    }
    const double dx = 1.0 / static_cast<double>(K);
    std::vector<Mode> modes;
    modes.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double x = (static_cast<double>(k) + 0.5) * dx;
        double omega;
        double jacobian;
        if (grading == 1.0) {
            omega = omega_max * x;
            jacobian = omega_max;
        } else {
            omega = omega_max * std::pow(x, grading);
            jacobian = omega_max * grading * std::pow(x, grading - 1.0);
        }
        modes.push_back({omega, sd(omega) * jacobian * dx});
    }
    return DiscreteBath(std::move(modes));
}

DiscreteBath discretize(const SpectralDensity& sd, std::size_t K, double omega_max) {
    return discretize(sd, K, omega_max, default_grading(sd));
}

double gamma1_discrete(const DiscreteBath& bath, double beta, const Hermiticity& h, double t) {
    h.require_physical();
    if (!(beta > 0.0)) {
        throw DomainError("gamma1_discrete: beta must be positive");
    }
    const double e2 = h.energy_squared();
    if (e2 == 0.0 || t == 0.0) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& m : bath.modes()) {
        const double c = specfun::coth_stable(0.5 * beta * m.omega);
        const double sn = std::sin(0.5 * m.omega * t) / m.omega;
        sum += (m.g_sq * c) * 2.0 * sn * sn;
    }
    return e2 * sum;
}

double phi_discrete(const DiscreteBath& bath, double t) {
    if (t == 0.0) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& m : bath.modes()) {
        sum += (m.g_sq / m.omega) * (std::sin(m.omega * t) / m.omega);
    }
    return sum;
}

// ------------------------------- Fock oracle --------------------------------

FockConfig::FockConfig(std::size_t n_cut_, std::size_t modes_used_)
    : n_cut(n_cut_), modes_used(modes_used_) {
    if (n_cut < 1) {
        throw DomainError("FockConfig: n_cut must be at least 1");
    }
    if (modes_used < 1 || modes_used > 3) {
        throw DomainError("FockConfig: modes_used must be 1, 2 or 3");
    }
}

double thermal_tail_weight(double omega, double beta, std::size_t n_cut) {
    if (std::isinf(beta)) return 0.0;
    return std::exp(-beta * omega * static_cast<double>(n_cut + 1));
}

namespace {

struct BathOperators {
    Eigen::MatrixXd free;      // sum_k w_k b_k^dagger b_k
    Eigen::MatrixXd coupling;  // sum_k g_k (b_k + b_k^dagger), g_k real
};

BathOperators build_bath_operators(const std::vector<Mode>& modes, std::size_t n_cut) {
    const std::size_t levels = n_cut + 1;
    std::size_t dim = 1;
    for (std::size_t k = 0; k < modes.size(); ++k) dim *= levels;

    BathOperators ops{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t rest = idx;
        std::size_t stride = 1;
        for (const auto& m : modes) {
            const std::size_t n = rest % levels;
            rest /= levels;
            ops.free(idx, idx) += m.omega * static_cast<double>(n);
            if (n > 0) {
                const double g = 0.5 * std::sqrt(m.g_sq);
                const double elem = g * std::sqrt(static_cast<double>(n));
                ops.coupling(idx - stride, idx) += elem;
                ops.coupling(idx, idx - stride) += elem;
            }
            stride *= levels;
        }
    }
    return ops;
}

// Bare thermal state of the free bath (diagonal in the Fock basis).
Eigen::MatrixXd bare_thermal_state(const std::vector<Mode>& modes, std::size_t n_cut, double beta) {
    const std::size_t levels = n_cut + 1;
    std::size_t dim = 1;
    for (std::size_t k = 0; k < modes.size(); ++k) dim *= levels;
    Eigen::VectorXd diag(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t rest = idx;
        double w = 1.0;
        for (const auto& m : modes) {
            const std::size_t n = rest % levels;
            rest /= levels;
            if (std::isinf(beta)) {
                w *= (n == 0) ? 1.0 : 0.0;
            } else {
                w *= std::exp(-beta * m.omega * static_cast<double>(n));
            }
        }
        diag(idx) = w;
    }
    diag /= diag.sum();
    return diag.asDiagonal();
}

} // namespace

FockOracle::FockOracle(const DiscreteBath& bath, const FockConfig& fc, double beta,
                       const Hermiticity& h, const QubitPureState& state, bool correlated) {
    if (!(std::abs(h.alpha()) < 1.0)) {
        throw DomainError("FockOracle: requires |alpha| < 1");
    }
    if (!(beta > 0.0)) {
        throw DomainError("FockOracle: beta must be positive");
    }
    if (fc.modes_used > bath.size()) {
        throw OracleError("FockOracle: bath has fewer modes than modes_used");
    }
    const std::vector<Mode> modes(bath.modes().begin(), bath.modes().begin() + fc.modes_used);

    block_dim_ = 1;
    for (std::size_t k = 0; k < modes.size(); ++k) block_dim_ *= fc.n_cut + 1;
    if (2 * block_dim_ > kMaxFockDimension) {
        std::ostringstream msg;
        msg << "FockOracle: dimension overflow (" << 2 * block_dim_ << " > " << kMaxFockDimension << ")";
        throw OracleError(msg.str());
    }
    for (const auto& m : modes) {
        const double tail = thermal_tail_weight(m.omega, beta, fc.n_cut);
        if (!(tail < kFockTailLimit)) {
            std::ostringstream msg;
            msg << "FockOracle: cutoff inadequate, thermal weight above n_cut = " << fc.n_cut
                << " is " << tail << " for mode w = " << m.omega;
            throw OracleError(msg.str());
        }
    }

    energy_ = h.energy();
    amplitude_ = {state.a(), state.b()};
    populations0_ = {std::norm(state.a()), std::norm(state.b())};

    // H = E sz + H_B + E sz X on (spin) x (bath), spin index 0 <-> sz = +1.
    const std::size_t d = block_dim_;
    const BathOperators ops = build_bath_operators(modes, fc.n_cut);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    const std::array<double, 2> sz = {1.0, -1.0};
    for (std::size_t s = 0; s < 2; ++s) {
        full.block(s * d, s * d, d, d) = energy_ * sz[s] * id + ops.free + energy_ * sz[s] * ops.coupling;
    }
    if (full.block(0, d, d, d).cwiseAbs().maxCoeff() != 0.0 ||
        full.block(d, 0, d, d).cwiseAbs().maxCoeff() != 0.0) {
        throw OracleError("FockOracle: Hamiltonian does not conserve sigma_z");
    }

    std::array<Eigen::MatrixXd, 2> vecs;
    for (std::size_t s = 0; s < 2; ++s) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full.block(s * d, s * d, d, d));
        if (solver.info() != Eigen::Success) {
            throw OracleError("FockOracle: eigendecomposition failed");
        }
        eigenvalues_[s] = solver.eigenvalues();
        vecs[s] = solver.eigenvectors();
    }

    Eigen::MatrixXd rho_b;
    if (!correlated) {
        rho_b = bare_thermal_state(modes, fc.n_cut, beta);
    } else {
        // <psi| e^{-beta H} |psi> = sum_s |c_s|^2 e^{-beta H_s}, shifted by the lowest
        // populated eigenvalue; beta = inf keeps only the ground manifold.
        double e_min = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < 2; ++s) {
            if (populations0_[s] > 0.0) e_min = std::min(e_min, eigenvalues_[s].minCoeff());
        }
        const double degeneracy_tol = 1e-12 * std::max(1.0, std::abs(e_min));
        rho_b = Eigen::MatrixXd::Zero(d, d);
        for (std::size_t s = 0; s < 2; ++s) {
            if (populations0_[s] == 0.0) continue;
            Eigen::VectorXd w(d);
            for (std::size_t m = 0; m < d; ++m) {
                const double gap = eigenvalues_[s](m) - e_min;
                if (std::isinf(beta)) {
                    w(m) = gap <= degeneracy_tol ? 1.0 : 0.0;
                } else {
                    w(m) = std::exp(-beta * gap);
                }
            }
            rho_b += populations0_[s] * vecs[s] * w.asDiagonal() * vecs[s].transpose();
        }
        rho_b /= rho_b.trace();
    }

    std::array<Eigen::MatrixXd, 2> projected;  // U_i^T rho_B
    for (std::size_t s = 0; s < 2; ++s) projected[s] = vecs[s].transpose() * rho_b;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Eigen::MatrixXd overlap = vecs[j].transpose() * vecs[i];  // [m, n]
            const Eigen::MatrixXd state_ij = projected[i] * vecs[j];       // [n, m]
            pairs_[i][j].weights = overlap.cwiseProduct(state_ij.transpose());
        }
    }
}

// Tr_B[ e^{-i H_i t} rho_B e^{i H_j t} ]
cplx FockOracle::block_trace(std::size_t i, std::size_t j, double t) const {
    const Eigen::VectorXd& ei = eigenvalues_[i];
    const Eigen::VectorXd& ej = eigenvalues_[j];
    const Eigen::VectorXd cos_i = (ei * t).array().cos();
    const Eigen::VectorXd sin_i = (ei * t).array().sin();
    const Eigen::MatrixXd& w = pairs_[i][j].weights;
    const Eigen::VectorXd y_re = w * cos_i;
    const Eigen::VectorXd y_im = -(w * sin_i);
    const Eigen::VectorXd cos_j = (ej * t).array().cos();
    const Eigen::VectorXd sin_j = (ej * t).array().sin();
    const double re = cos_j.dot(y_re) - sin_j.dot(y_im);
    const double im = cos_j.dot(y_im) + sin_j.dot(y_re);
    return {re, im};
}

TwoLevelMatrix FockOracle::reduced(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("FockOracle: time must be finite and nonnegative");
    }
    const std::array<double, 2> free_energy = {energy_, -energy_};
    TwoLevelMatrix rho;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const cplx schrodinger = amplitude_[i] * std::conj(amplitude_[j]) * block_trace(i, j, t);
            const double angle = (free_energy[i] - free_energy[j]) * t;
            rho(i, j) = schrodinger * cplx{std::cos(angle), std::sin(angle)};
        }
    }

    constexpr double tol = 1e-10;
    const DensityCheck check = check_density(rho);
    if (!check.valid(tol)) {
        std::ostringstream msg;
        msg << "FockOracle: reduced state invalid at t = " << t << " (hermiticity "
            << check.hermiticity_error << ", trace " << check.trace_error << ", min eigenvalue "
            << check.min_eigenvalue << ")";
        throw OracleError(msg.str());
    }
    for (std::size_t s = 0; s < 2; ++s) {
        if (std::abs(rho(s, s) - populations0_[s]) > tol) {
            throw OracleError("FockOracle: populations drifted under pure dephasing");
        }
    }
    return rho;
}

cplx fock_exact_offdiag(const DiscreteBath& bath, const FockConfig& fc, double beta,
                        const Hermiticity& h, const QubitPureState& state, bool correlated, double t) {
    return FockOracle(bath, fc, beta, h, state, correlated).coherence(t);
}

} // namespace ptq::oracle
