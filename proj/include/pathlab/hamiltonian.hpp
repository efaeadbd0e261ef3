#pragma once

#include <Eigen/Dense>

#include "pathlab/grid.hpp"

namespace pathlab {

// Physical constants of a model. hbar and mass default to 1 but stay
// explicit so unit checks are possible.
struct ModelParams {
    double hbar = 1.0;
    double mass = 1.0;
};

enum class Stencil { ThreePoint, FivePoint };

// Dense real-symmetric lattice Hamiltonian H = T + V.
//
// The kinetic part discretizes -hbar^2/(2m) d^2/dq^2 with a central
// difference: the 3-point stencil has diagonal hbar^2/(m dq^2) and
// nearest-neighbour coupling -hbar^2/(2 m dq^2); the 5-point variant is the
// fourth-order stencil (-1, 16, -30, 16, -1)/12. Periodic grids wrap the
// couplings, reflecting grids mirror them at the walls so every kinetic row
// still sums to zero.
Eigen::MatrixXd build_hamiltonian(const SpatialGrid& grid,
                                  const Potential& pot,
                                  const ModelParams& params,
                                  Stencil stencil = Stencil::ThreePoint);

// Kinetic part alone (V = 0); used by the split-step propagator.
Eigen::MatrixXd build_kinetic(const SpatialGrid& grid,
                              const ModelParams& params,
                              Stencil stencil = Stencil::ThreePoint);

}  // namespace pathlab
