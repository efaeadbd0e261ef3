#pragma once

#include <complex>

#include <Eigen/Dense>

#include "pathlab/grid.hpp"
#include "pathlab/hamiltonian.hpp"

namespace pathlab {

// Eigenbasis of a lattice Hamiltonian. Energies are ascending; mode k lives
// in modes.col(k) and is normalized with respect to the grid measure,
// sum_j phi_k(q_j) phi_l(q_j) dq = delta_kl, so completeness reads
// sum_k phi_k(q_i) phi_k(q_j) = delta_ij / dq.
struct SpectralDecomposition {
    Eigen::VectorXd energies;
    Eigen::MatrixXd modes;
    SpatialGrid grid;
    ModelParams params;
};

// Dense symmetric eigensolve plus a deterministic gauge: each mode's largest
// magnitude component (lowest index on ties) is made positive, so repeated
// runs and different backends agree on signs.
SpectralDecomposition diagonalize(const Eigen::MatrixXd& h,
                                  const SpatialGrid& grid,
                                  const ModelParams& params);

// Euclidean transfer kernel P(q_i, dtau | q_j, 0) = sum_k phi_k(q_i)
// phi_k(q_j) exp(-dtau E_k / hbar). Rows are the arrival point. At dtau = 0
// this reduces to the identity density delta_ij / dq.
Eigen::MatrixXd imaginary_kernel(const SpectralDecomposition& spec,
                                 double dtau);

// Unitary-time kernel K(q_i, dt | q_j, 0) = sum_k phi_k(q_i) phi_k(q_j)
// exp(-i dt E_k / hbar). Satisfies dq^2 K^dagger K = identity.
Eigen::MatrixXcd real_kernel(const SpectralDecomposition& spec, double dt);

// Kernel at complex time: weight exp(-tau E_k / hbar). Reduces to the
// Euclidean kernel for real tau and to the unitary kernel for tau = i dt,
// which is the substitution the two entry points above are checked against.
Eigen::MatrixXcd complex_kernel(const SpectralDecomposition& spec,
                                std::complex<double> tau);

// Transition weight between two grid points: one entry of the Euclidean
// kernel, kept as a named operation for callers that think in endpoints.
double amplitude(const SpectralDecomposition& spec, double dtau,
                 std::size_t j_from, std::size_t j_to);

// integral dq1 P(q1, dtau | q0, 0) for the start point q_j0: column sum
// times dq. Equals 1 for a free particle (probability conservation) and
// drops below 1 once a positive potential kills weight.
double total_mass(const Eigen::MatrixXd& kernel, const SpatialGrid& grid,
                  std::size_t j0);

// Mass of every start point at once.
Eigen::VectorXd mass_profile(const Eigen::MatrixXd& kernel,
                             const SpatialGrid& grid);

}  // namespace pathlab
