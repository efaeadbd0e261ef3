#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "pathlab/grid.hpp"
#include "pathlab/hamiltonian.hpp"

namespace pathlab {

// Orthonormal basis of phase-space cells on an n-site grid split into
// blocks of s_q sites. Cell (Q, P) is the block-local plane wave
//   psi_{Q,P}(j) = exp(2 pi i P (j - Q s_q) / s_q) / sqrt(s_q)
// supported on block Q only. Column Q*s_q + P of `u` holds that state, so
// u is unitary. Each cell occupies position width dQ = s_q*dq and momentum
// width dP = 2*pi*hbar/dQ: the cell area is 2*pi*hbar independent of s_q.
struct PlanckCellBasis {
    std::size_t n = 0;
    std::size_t sites_per_cell = 0;
    std::size_t n_blocks = 0;
    double dq = 0.0;
    double hbar = 1.0;
    Eigen::MatrixXcd u;

    std::size_t cell_index(std::size_t block, std::size_t p) const {
        return block * sites_per_cell + p;
    }
    double delta_q() const { return double(sites_per_cell) * dq; }
    double delta_p() const {
        return 2.0 * 3.141592653589793238462643383279502884 * hbar / delta_q();
    }
    double cell_area() const { return delta_q() * delta_p(); }
};

PlanckCellBasis build_planck_basis(const SpatialGrid& grid,
                                   std::size_t sites_per_cell,
                                   double hbar = 1.0);

// Observable after restriction to the cell basis: pinched matrix plus its
// diagonal (the only part that survives).
struct RedefinedObservable {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXd cell_diagonal;
};

// Pinching map: keep only the cell-diagonal part,
// A -> sum_c |psi_c><psi_c| A |psi_c><psi_c|. Idempotent, preserves
// hermiticity and trace.
RedefinedObservable project_observable(const PlanckCellBasis& basis,
                                       const Eigen::MatrixXcd& a);

// Largest off-diagonal magnitude of an operator in the cell basis. Zero
// (to roundoff) exactly when the operator respects the superselection rule.
double ssr_violation(const PlanckCellBasis& basis, const Eigen::MatrixXcd& a);

bool verify_ssr(const PlanckCellBasis& basis, const Eigen::MatrixXcd& a,
                double tol = 1e-12);

enum class TimeMode { Imaginary, Real };

// Propagator generated by a (typically pinched) Hamiltonian:
// exp(-dt H / hbar) for imaginary mode, exp(-i dt H / hbar) for real mode,
// evaluated through the full dense eigendecomposition of h. No diagonality
// is imposed; if h commutes with every cell projector the result comes out
// cell-diagonal on its own, which is what callers check.
Eigen::MatrixXcd cell_propagator(const PlanckCellBasis& basis,
                                 const Eigen::MatrixXcd& h, double dt,
                                 TimeMode mode);

// Decohered content of a pure state over phase-space cells:
// p_c = |<psi_c|phi>|^2, indexed like the basis columns.
Eigen::VectorXd phase_space_mixture(const PlanckCellBasis& basis,
                                    const Eigen::VectorXcd& phi);

}  // namespace pathlab
