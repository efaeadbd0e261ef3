#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pathlab/grid.hpp"
#include "pathlab/info.hpp"
#include "pathlab/rng.hpp"
#include "pathlab/ssr.hpp"

using namespace pathlab;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

Eigen::MatrixXcd random_hermitian(std::size_t n, std::uint64_t seed) {
    StreamRng rng(seed, 0);
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            a(i, j) = rng.complex_normal();
    return (a + a.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("cell basis columns are block plane waves and unitary") {
    SpatialGrid grid(8, 4.0);
    const PlanckCellBasis basis = build_planck_basis(grid, 2);
    CHECK(basis.n_blocks == 4);

    // block 0, momentum 0: flat on its two sites, zero elsewhere
    CHECK(basis.u(0, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(basis.u(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(basis.u(2, 0)) == 0.0);
    // block 0, momentum 1: alternating sign inside the block
    CHECK(basis.u(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(basis.u(1, 1).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
    // block 2 starts at site 4
    CHECK(std::abs(basis.u(3, basis.cell_index(2, 0))) == 0.0);
    CHECK(std::abs(basis.u(4, basis.cell_index(2, 0))) ==
          doctest::Approx(1.0 / std::sqrt(2.0)));

    const Eigen::MatrixXcd gram =
        basis.u.adjoint() * basis.u - Eigen::MatrixXcd::Identity(8, 8);
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(build_planck_basis(grid, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_planck_basis(grid, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_planck_basis(grid, 2, -1.0), std::invalid_argument);
}

TEST_CASE("every cell occupies exactly one quantum of phase-space area") {
    SpatialGrid grid(64, 16.0);  // dq = 1/4, a power of two
    for (std::size_t s : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
        const PlanckCellBasis basis = build_planck_basis(grid, s);
        CHECK(basis.delta_q() == double(s) * 0.25);
        CHECK(basis.cell_area() == kTwoPi);  // exact: dQ is a power of two
    }
    const PlanckCellBasis scaled = build_planck_basis(grid, 4, 2.0);
    CHECK(scaled.cell_area() == 2.0 * kTwoPi);
}

TEST_CASE("pinching keeps the diagonal and kills every cross-cell element") {
    SpatialGrid grid(16, 8.0);
    const PlanckCellBasis basis = build_planck_basis(grid, 4);
    const Eigen::MatrixXcd a = random_hermitian(16, 3);

    CHECK(ssr_violation(basis, a) > 0.1);  // generic operators violate it
    CHECK_FALSE(verify_ssr(basis, a));

    const RedefinedObservable pinched = project_observable(basis, a);
    CHECK(ssr_violation(basis, pinched.matrix) < 1e-13);
    CHECK(verify_ssr(basis, pinched.matrix));

    // hermitian, trace preserving, idempotent
    CHECK((pinched.matrix - pinched.matrix.adjoint()).cwiseAbs().maxCoeff() <
          1e-13);
    CHECK(pinched.matrix.trace().real() == doctest::Approx(a.trace().real()));
    CHECK(std::abs(pinched.matrix.trace().imag()) < 1e-13);
    const RedefinedObservable twice =
        project_observable(basis, pinched.matrix);
    CHECK((twice.matrix - pinched.matrix).cwiseAbs().maxCoeff() < 1e-13);

    // expectation values in cell states are what the diagonal stores
    for (std::size_t c : {0u, 5u, 11u}) {
        const Eigen::VectorXcd psi = basis.u.col(static_cast<Eigen::Index>(c));
        const std::complex<double> val = psi.dot(a * psi);
        CHECK(pinched.cell_diagonal[static_cast<Eigen::Index>(c)] ==
              doctest::Approx(val.real()));
    }

    CHECK_THROWS_AS(project_observable(basis, Eigen::MatrixXcd::Zero(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("propagators of pinched generators stay cell-diagonal") {
    SpatialGrid grid(16, 8.0);
    const PlanckCellBasis basis = build_planck_basis(grid, 4);
    const Eigen::MatrixXcd h =
        project_observable(basis, random_hermitian(16, 17)).matrix;

    for (double dt : {0.25, 0.5, 1.0, 2.0}) {
        const Eigen::MatrixXcd u_real =
            cell_propagator(basis, h, dt, TimeMode::Real);
        const Eigen::MatrixXcd u_imag =
            cell_propagator(basis, h, dt, TimeMode::Imaginary);
        CHECK(ssr_violation(basis, u_real) < 1e-12);
        CHECK(ssr_violation(basis, u_imag) < 1e-12);
        // the real-time one is unitary on top of being diagonal
        const Eigen::MatrixXcd gram = u_real.adjoint() * u_real -
                                      Eigen::MatrixXcd::Identity(16, 16);
        CHECK(gram.cwiseAbs().maxCoeff() < 1e-12);
    }

    // an unpinched generator immediately leaks across cells
    const Eigen::MatrixXcd h_raw = random_hermitian(16, 17);
    const Eigen::MatrixXcd u_raw =
        cell_propagator(basis, h_raw, 1.0, TimeMode::Real);
    CHECK(ssr_violation(basis, u_raw) > 1e-3);

    Eigen::MatrixXcd not_hermitian = h_raw;
    not_hermitian(0, 1) += 1.0;
    CHECK_THROWS_AS(cell_propagator(basis, not_hermitian, 1.0, TimeMode::Real),
                    std::invalid_argument);
}

TEST_CASE("a single cell state decoheres to a point in phase space") {
    SpatialGrid grid(16, 8.0);
    const PlanckCellBasis basis = build_planck_basis(grid, 4);

    const Eigen::VectorXcd psi = basis.u.col(7);
    const Eigen::VectorXd probs = phase_space_mixture(basis, psi);
    CHECK(probs.sum() == doctest::Approx(1.0));
    CHECK(probs[7] == doctest::Approx(1.0));
    CHECK(shannon_bits(probs) < 1e-10);

    // an equal split across two cells carries one bit
    const Eigen::VectorXcd mix =
        (basis.u.col(2) + basis.u.col(9)) / std::sqrt(2.0);
    const Eigen::VectorXd p2 = phase_space_mixture(basis, mix);
    CHECK(std::abs(shannon_bits(p2) - 1.0) < 1e-12);

    // a position eigenstate spreads across the momenta of its own block only
    Eigen::VectorXcd point = Eigen::VectorXcd::Zero(16);
    point[5] = 1.0;  // block 1
    const Eigen::VectorXd p3 = phase_space_mixture(basis, point);
    for (std::size_t c = 0; c < 16; ++c) {
        const double expect = (c / 4 == 1) ? 0.25 : 0.0;
        CHECK(p3[static_cast<Eigen::Index>(c)] == doctest::Approx(expect));
    }
    CHECK(std::abs(shannon_bits(p3) - 2.0) < 1e-12);

    CHECK_THROWS_AS(phase_space_mixture(basis, Eigen::VectorXcd::Zero(4)),
                    std::invalid_argument);
}
