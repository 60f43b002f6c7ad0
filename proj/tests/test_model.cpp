#include "ptq/errors.hpp"
#include "ptq/model.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace ptq;
using Catch::Approx;

TEST_CASE("eigenvalues of the PT-symmetric qubit", "[model]") {
    SECTION("Hermitian point") {
        const auto [ep, em] = eigenvalues(Hermiticity(0.0));
        CHECK(ep == cplx{1.0, 0.0});
        CHECK(em == cplx{-1.0, 0.0});
    }
    SECTION("exceptional point is degenerate") {
        const auto [ep, em] = eigenvalues(Hermiticity(1.0));
        CHECK(ep == cplx{0.0, 0.0});
        CHECK(em == cplx{0.0, 0.0});
    }
    SECTION("broken phase gives an imaginary pair") {
        const auto [ep, em] = eigenvalues(Hermiticity(2.0));
        CHECK(ep.real() == 0.0);
        CHECK(ep.imag() == Approx(std::sqrt(3.0)).epsilon(1e-15));
        CHECK(em.imag() == Approx(-std::sqrt(3.0)).epsilon(1e-15));
    }
    SECTION("agree with a dense eigensolver") {
        for (double a : {-0.9, -0.3, 0.0, 0.4, 0.99, 1.5}) {
            Eigen::ComplexEigenSolver<TwoLevelMatrix> es(system_hamiltonian(Hermiticity(a)));
            const auto [ep, em] = eigenvalues(Hermiticity(a));
            auto ev = es.eigenvalues();
            const bool direct = std::abs(ev(0) - ep) < 1e-12 && std::abs(ev(1) - em) < 1e-12;
            const bool swapped = std::abs(ev(1) - ep) < 1e-12 && std::abs(ev(0) - em) < 1e-12;
            CHECK((direct || swapped));
        }
    }
    SECTION("real iff |alpha| <= 1 and continuous through the exceptional point") {
        for (double a = -1.5; a <= 1.5; a += 0.01) {
            const auto [ep, em] = eigenvalues(Hermiticity(a));
            CHECK((ep.imag() == 0.0) == (std::abs(a) <= 1.0));
        }
        const auto [near_p, near_m] = eigenvalues(Hermiticity(1.0 - 1e-12));
        CHECK(std::abs(near_p - near_m) < 1e-5);
    }
}

TEST_CASE("Hermiticity energy and physical regime", "[model]") {
    CHECK(Hermiticity(0.6).energy() == Approx(0.8).epsilon(1e-15));
    CHECK(Hermiticity(-1.0).energy() == 0.0);
    CHECK_THROWS_AS(Hermiticity(1.01).energy(), DomainError);
    CHECK_THROWS_AS(Hermiticity(std::nan("")), DomainError);
}

TEST_CASE("similarity transform", "[model]") {
    SECTION("alpha = 0 gives sqrt(2) times identity") {
        const auto t = build_transform(Hermiticity(0.0));
        CHECK(max_abs_diff(t.matrix(), std::sqrt(2.0) * pauli::identity()) < 1e-15);
    }
    SECTION("alpha = 0.5 maps H_S to E sigma_x") {
        const auto t = build_transform(Hermiticity(0.5));
        const TwoLevelMatrix mapped = t.conjugate(system_hamiltonian(Hermiticity(0.5)));
        CHECK(std::abs(mapped(0, 0)) < 1e-14);
        CHECK(std::abs(mapped(1, 1)) < 1e-14);
        CHECK(std::abs(mapped(0, 1) - std::sqrt(0.75)) < 1e-14);
        CHECK(std::abs(mapped(1, 0) - std::sqrt(0.75)) < 1e-14);
    }
    SECTION("singular at the exceptional point") {
        CHECK_THROWS_AS(build_transform(Hermiticity(1.0)), SingularTransform);
        CHECK_THROWS_AS(build_transform(Hermiticity(-1.0)), SingularTransform);
        CHECK_THROWS_AS(build_transform(Hermiticity(3.0)), SingularTransform);
    }
    SECTION("inverse and conjugation hold across the physical range") {
        for (double a = -0.999; a < 1.0; a += 0.0185) {
            const Hermiticity h(a);
            const auto t = build_transform(h);
            CHECK(max_abs_diff(t.matrix() * t.inverse(), pauli::identity()) < 1e-12);
            CHECK(max_abs_diff(t.conjugate(system_hamiltonian(h)), h.energy() * pauli::sigma_x()) < 1e-10);
        }
    }
}

TEST_CASE("pt_frame back-transform", "[model]") {
    TwoLevelMatrix plus;
    plus << 0.5, 0.5, 0.5, 0.5;

    SECTION("alpha = 0 leaves rho unchanged") {
        const auto t = build_transform(Hermiticity(0.0));
        CHECK(max_abs_diff(pt_frame(plus, t), plus) < 1e-15);
    }
    SECTION("trace preserved for diag(1, 0)") {
        TwoLevelMatrix up = TwoLevelMatrix::Zero();
        up(0, 0) = 1.0;
        for (double a : {-0.9, -0.2, 0.3, 0.95}) {
            const auto t = build_transform(Hermiticity(a));
            CHECK(std::abs(pt_frame(up, t).trace() - 1.0) < 1e-12);
        }
    }
    SECTION("alpha = 0.5 against an explicit product") {
        const auto t = build_transform(Hermiticity(0.5));
        // T^-1 built independently: D^dag diag(1/s+, 1/s-) D
        const double sp = std::sqrt(3.0);
        const double sm = 1.0;
        const cplx i{0.0, 1.0};
        TwoLevelMatrix d;
        d << i, 1.0, -i, 1.0;
        d /= std::sqrt(2.0);
        TwoLevelMatrix dm = TwoLevelMatrix::Zero();
        dm(0, 0) = sp;
        dm(1, 1) = sm;
        TwoLevelMatrix dmi = TwoLevelMatrix::Zero();
        dmi(0, 0) = 1.0 / sp;
        dmi(1, 1) = 1.0 / sm;
        const TwoLevelMatrix expected = (d.adjoint() * dmi * d) * plus * (d.adjoint() * dm * d);
        const TwoLevelMatrix got = pt_frame(plus, t);
        CHECK(max_abs_diff(got, expected) < 1e-14);
        CHECK(std::abs(got.trace() - 1.0) < 1e-12);
    }
    SECTION("random density matrices keep their trace") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int n = 0; n < 200; ++n) {
            // rho = (I + r . sigma) / 2 with |r| <= 1
            Eigen::Vector3d r(u(rng), u(rng), u(rng));
            if (r.norm() > 1.0) r.normalize();
            const TwoLevelMatrix rho =
                0.5 * (pauli::identity() + r(0) * pauli::sigma_x() + r(1) * pauli::sigma_y() + r(2) * pauli::sigma_z());
            REQUIRE(is_density_matrix(rho));
            const auto t = build_transform(Hermiticity(0.98 * u(rng)));
            CHECK(std::abs(pt_frame(relabel_z_to_x(rho), t).trace() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("relabel swaps sigma_x and sigma_z", "[model]") {
    CHECK(max_abs_diff(relabel_z_to_x(pauli::sigma_z()), pauli::sigma_x()) < 1e-15);
    CHECK(max_abs_diff(relabel_z_to_x(pauli::sigma_x()), pauli::sigma_z()) < 1e-15);
}

TEST_CASE("density matrix check", "[model]") {
    TwoLevelMatrix bad;
    bad << 0.5, 0.6, 0.6, 0.5;  // eigenvalue -0.1
    const auto c = check_density(bad);
    CHECK(c.min_eigenvalue == Approx(-0.1));
    CHECK_FALSE(is_density_matrix(bad));
    CHECK(is_density_matrix(0.5 * pauli::identity()));
}
