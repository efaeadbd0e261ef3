#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pathlab {

enum class Boundary { Periodic, Reflecting };

// Uniform one-dimensional grid of N sites covering a box of side L centred
// on the origin: q_j = -L/2 + j*dq with dq = L/N. The right edge +L/2 is
// excluded; under periodic boundary conditions it is identified with the
// left edge.
struct SpatialGrid {
    std::size_t n = 0;
    double length = 0.0;
    double dq = 0.0;
    Boundary boundary = Boundary::Periodic;

    SpatialGrid() = default;
    SpatialGrid(std::size_t n_sites, double box_length,
                Boundary bc = Boundary::Periodic)
        : n(n_sites), length(box_length), dq(box_length / double(n_sites)),
          boundary(bc) {
        if (n_sites < 2)
            throw std::invalid_argument("SpatialGrid: need at least 2 sites");
        if (!(box_length > 0.0))
            throw std::invalid_argument("SpatialGrid: box length must be > 0");
    }

    double site(std::size_t j) const { return -0.5 * length + double(j) * dq; }

    Eigen::VectorXd sites() const {
        Eigen::VectorXd q(n);
        for (std::size_t j = 0; j < n; ++j) q[j] = site(j);
        return q;
    }

    // Continuum coordinate folded into the box: periodic wrap into
    // [-L/2, L/2), reflecting mirror at the walls.
    double fold(double q) const;

    // Nearest site index for a continuum coordinate, after folding.
    std::size_t nearest_site(double q) const;
};

enum class PotentialKind { Free, Harmonic, SquareWell, Tabulated };

// Scalar potential evaluated on grid sites. Tabulated data must match the
// grid size exactly; the analytic forms are sampled at the site coordinates.
class Potential {
  public:
    static Potential free();
    static Potential harmonic(double omega, double mass = 1.0);
    static Potential square_well(double depth, double width);
    static Potential tabulated(std::vector<double> values);

    PotentialKind kind() const { return kind_; }

    // Values on the grid, one per site.
    Eigen::VectorXd sample(const SpatialGrid& grid) const;

    // Pointwise value for analytic kinds; tabulated potentials only exist on
    // their grid and reject off-grid evaluation.
    double value(double q) const;

    // Value seen by a walker at continuum position q: the coordinate is
    // folded into the box first, so the potential matches the periodic or
    // mirrored extension the lattice Hamiltonian encodes. Tabulated data is
    // looked up at the nearest site.
    double value_on(const SpatialGrid& grid, double q) const;

    std::string describe() const;

  private:
    Potential(PotentialKind kind) : kind_(kind) {}

    PotentialKind kind_;
    double omega_ = 0.0;
    double mass_ = 1.0;
    double depth_ = 0.0;
    double width_ = 0.0;
    std::vector<double> table_;
};

}  // namespace pathlab
