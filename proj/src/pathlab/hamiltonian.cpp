#include "pathlab/hamiltonian.hpp"

#include <stdexcept>

namespace pathlab {

namespace {

// Adds c * psi(j + off) to row j of the stencil, folding the neighbour
// index back into the grid. Periodic wraps; reflecting mirrors at the
// walls (Neumann: the ghost site -1 maps to 0, n to n-1), which keeps
// every kinetic row summing to zero.
void add_coupling(Eigen::MatrixXd& t, const SpatialGrid& grid, std::size_t j,
                  long long off, double c) {
    const auto n = static_cast<long long>(grid.n);
    long long k = static_cast<long long>(j) + off;
    if (grid.boundary == Boundary::Periodic) {
        k = ((k % n) + n) % n;
    } else {
        while (k < 0 || k >= n) {
            if (k < 0) k = -k - 1;
            if (k >= n) k = 2 * n - 1 - k;
        }
    }
    t(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += c;
}

}  // namespace

Eigen::MatrixXd build_kinetic(const SpatialGrid& grid,
                              const ModelParams& params, Stencil stencil) {
    if (!(params.hbar > 0.0) || !(params.mass > 0.0))
        throw std::invalid_argument("build_kinetic: hbar and mass must be > 0");
    const auto n = static_cast<Eigen::Index>(grid.n);
    const double scale =
        params.hbar * params.hbar / (2.0 * params.mass * grid.dq * grid.dq);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        if (stencil == Stencil::ThreePoint) {
            add_coupling(t, grid, j, 0, 2.0 * scale);
            add_coupling(t, grid, j, -1, -scale);
            add_coupling(t, grid, j, +1, -scale);
        } else {
            add_coupling(t, grid, j, 0, 30.0 / 12.0 * scale);
            add_coupling(t, grid, j, -1, -16.0 / 12.0 * scale);
            add_coupling(t, grid, j, +1, -16.0 / 12.0 * scale);
            add_coupling(t, grid, j, -2, 1.0 / 12.0 * scale);
            add_coupling(t, grid, j, +2, 1.0 / 12.0 * scale);
        }
    }
    return t;
}

Eigen::MatrixXd build_hamiltonian(const SpatialGrid& grid,
                                  const Potential& pot,
                                  const ModelParams& params, Stencil stencil) {
    Eigen::MatrixXd h = build_kinetic(grid, params, stencil);
    h.diagonal() += pot.sample(grid);
    return h;
}

}  // namespace pathlab
