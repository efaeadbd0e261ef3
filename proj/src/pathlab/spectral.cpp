#include "pathlab/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace pathlab {

namespace {

// Gauge fix: flip each column so its largest-magnitude entry (first such
// entry on ties) is positive. Removes the solver's arbitrary sign choice.
void fix_signs(Eigen::MatrixXd& modes) {
    for (Eigen::Index k = 0; k < modes.cols(); ++k) {
        Eigen::Index best = 0;
        double mag = 0.0;
        for (Eigen::Index i = 0; i < modes.rows(); ++i) {
            const double a = std::abs(modes(i, k));
            if (a > mag) {
                mag = a;
                best = i;
            }
        }
        if (modes(best, k) < 0.0) modes.col(k) = -modes.col(k);
    }
}

}  // namespace

SpectralDecomposition diagonalize(const Eigen::MatrixXd& h,
                                  const SpatialGrid& grid,
                                  const ModelParams& params) {
    if (h.rows() != h.cols() ||
        h.rows() != static_cast<Eigen::Index>(grid.n))
        throw std::invalid_argument(
            "diagonalize: matrix size does not match grid");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize: eigensolver failed");
    SpectralDecomposition spec;
    spec.energies = solver.eigenvalues();
    // rescale to grid-measure normalization: sum_j phi^2 dq = 1; the modes
    // then carry a 1/sqrt(dq) each and completeness gives delta_ij/dq
    spec.modes = solver.eigenvectors() / std::sqrt(grid.dq);
    fix_signs(spec.modes);
    spec.grid = grid;
    spec.params = params;
    return spec;
}

Eigen::MatrixXd imaginary_kernel(const SpectralDecomposition& spec,
                                 double dtau) {
    if (dtau < 0.0)
        throw std::invalid_argument("imaginary_kernel: dtau must be >= 0");
    const Eigen::ArrayXd w =
        (-dtau / spec.params.hbar * spec.energies.array()).exp();
    return spec.modes * w.matrix().asDiagonal() * spec.modes.transpose();
}

Eigen::MatrixXcd complex_kernel(const SpectralDecomposition& spec,
                                std::complex<double> tau) {
    const Eigen::Index n = spec.energies.size();
    Eigen::VectorXcd w(n);
    for (Eigen::Index k = 0; k < n; ++k)
        w[k] = std::exp(-tau * spec.energies[k] / spec.params.hbar);
    const Eigen::MatrixXcd modes = spec.modes.cast<std::complex<double>>();
    // transpose, not adjoint: the modes are real, the weight is what is
    // complex, and the kernel is symmetric in its endpoints
    return modes * w.asDiagonal() * modes.transpose();
}

Eigen::MatrixXcd real_kernel(const SpectralDecomposition& spec, double dt) {
    const Eigen::Index n = spec.energies.size();
    Eigen::VectorXcd w(n);
    for (Eigen::Index k = 0; k < n; ++k)
        w[k] = std::polar(1.0, -dt * spec.energies[k] / spec.params.hbar);
    const Eigen::MatrixXcd modes = spec.modes.cast<std::complex<double>>();
    return modes * w.asDiagonal() * modes.transpose();
}

double amplitude(const SpectralDecomposition& spec, double dtau,
                 std::size_t j_from, std::size_t j_to) {
    const auto n = static_cast<std::size_t>(spec.modes.rows());
    if (j_from >= n || j_to >= n)
        throw std::invalid_argument("amplitude: site index out of range");
    double acc = 0.0;
    for (Eigen::Index k = 0; k < spec.modes.cols(); ++k)
        acc += spec.modes(static_cast<Eigen::Index>(j_to), k) *
               spec.modes(static_cast<Eigen::Index>(j_from), k) *
               std::exp(-dtau * spec.energies[k] / spec.params.hbar);
    return acc;
}

double total_mass(const Eigen::MatrixXd& kernel, const SpatialGrid& grid,
                  std::size_t j0) {
    if (j0 >= grid.n || kernel.rows() != static_cast<Eigen::Index>(grid.n))
        throw std::invalid_argument("total_mass: index or size mismatch");
    return kernel.col(static_cast<Eigen::Index>(j0)).sum() * grid.dq;
}

Eigen::VectorXd mass_profile(const Eigen::MatrixXd& kernel,
                             const SpatialGrid& grid) {
    if (kernel.rows() != static_cast<Eigen::Index>(grid.n))
        throw std::invalid_argument("mass_profile: size mismatch");
    return kernel.colwise().sum().transpose() * grid.dq;
}

}  // namespace pathlab
