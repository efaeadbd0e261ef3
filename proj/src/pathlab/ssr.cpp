#include "pathlab/ssr.hpp"

#include <cmath>
#include <stdexcept>

namespace pathlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

PlanckCellBasis build_planck_basis(const SpatialGrid& grid,
                                   std::size_t sites_per_cell, double hbar) {
    if (sites_per_cell == 0 || grid.n % sites_per_cell != 0)
        throw std::invalid_argument(
            "build_planck_basis: cell size must divide the grid size");
    if (!(hbar > 0.0))
        throw std::invalid_argument("build_planck_basis: hbar must be > 0");
    PlanckCellBasis basis;
    basis.n = grid.n;
    basis.sites_per_cell = sites_per_cell;
    basis.n_blocks = grid.n / sites_per_cell;
    basis.dq = grid.dq;
    basis.hbar = hbar;
    basis.u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.n),
                                     static_cast<Eigen::Index>(grid.n));
    const double norm = 1.0 / std::sqrt(double(sites_per_cell));
    for (std::size_t block = 0; block < basis.n_blocks; ++block)
        for (std::size_t p = 0; p < sites_per_cell; ++p) {
            const auto col =
                static_cast<Eigen::Index>(basis.cell_index(block, p));
            for (std::size_t r = 0; r < sites_per_cell; ++r) {
                const std::size_t j = block * sites_per_cell + r;
                const double phase =
                    kTwoPi * double(p) * double(r) / double(sites_per_cell);
                basis.u(static_cast<Eigen::Index>(j), col) =
                    norm * std::polar(1.0, phase);
            }
        }
    return basis;
}

RedefinedObservable project_observable(const PlanckCellBasis& basis,
                                       const Eigen::MatrixXcd& a) {
    if (a.rows() != static_cast<Eigen::Index>(basis.n) || a.rows() != a.cols())
        throw std::invalid_argument("project_observable: size mismatch");
    const Eigen::MatrixXcd in_cells = basis.u.adjoint() * a * basis.u;
    RedefinedObservable out;
    out.cell_diagonal = in_cells.diagonal().real();
    out.matrix = basis.u *
                 in_cells.diagonal().asDiagonal().toDenseMatrix() *
                 basis.u.adjoint();
    return out;
}

double ssr_violation(const PlanckCellBasis& basis, const Eigen::MatrixXcd& a) {
    if (a.rows() != static_cast<Eigen::Index>(basis.n) || a.rows() != a.cols())
        throw std::invalid_argument("ssr_violation: size mismatch");
    const Eigen::MatrixXcd in_cells = basis.u.adjoint() * a * basis.u;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < in_cells.rows(); ++i)
        for (Eigen::Index j = 0; j < in_cells.cols(); ++j) {
            if (i == j) continue;
            worst = std::max(worst, std::abs(in_cells(i, j)));
        }
    return worst;
}

bool verify_ssr(const PlanckCellBasis& basis, const Eigen::MatrixXcd& a,
                double tol) {
    return ssr_violation(basis, a) <= tol;
}

Eigen::MatrixXcd cell_propagator(const PlanckCellBasis& basis,
                                 const Eigen::MatrixXcd& h, double dt,
                                 TimeMode mode) {
    if (h.rows() != static_cast<Eigen::Index>(basis.n) || h.rows() != h.cols())
        throw std::invalid_argument("cell_propagator: size mismatch");
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("cell_propagator: generator not hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("cell_propagator: eigensolve failed");
    const Eigen::Index n = h.rows();
    Eigen::VectorXcd w(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double e = solver.eigenvalues()[k];
        w[k] = mode == TimeMode::Imaginary
                   ? std::complex<double>(std::exp(-dt * e / basis.hbar), 0.0)
                   : std::polar(1.0, -dt * e / basis.hbar);
    }
    return solver.eigenvectors() * w.asDiagonal() *
           solver.eigenvectors().adjoint();
}

Eigen::VectorXd phase_space_mixture(const PlanckCellBasis& basis,
                                    const Eigen::VectorXcd& phi) {
    if (phi.size() != static_cast<Eigen::Index>(basis.n))
        throw std::invalid_argument("phase_space_mixture: size mismatch");
    return (basis.u.adjoint() * phi).cwiseAbs2();
}

}  // namespace pathlab
