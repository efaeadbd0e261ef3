#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pathlab/grid.hpp"
#include "pathlab/hamiltonian.hpp"

namespace pathlab {

// One discretized path: M steps of size eps = dtau / M starting at gamma_0.
// A surviving path has M+1 points and kill_step == M; a killed path stops
// at the fatal proposal and kill_step is the 1-based step that killed it.
struct PathSample {
    std::vector<double> points;
    bool alive = true;
    std::size_t kill_step = 0;
};

// Euclidean action of a discrete path under the trapezoid rule:
//   S = sum_k eps * [ m/2 * ((gamma_{k+1}-gamma_k)/eps)^2
//                     + (V(gamma_k) + V(gamma_{k+1})) / 2 ].
double path_action(const std::vector<double>& points, double eps,
                   const SpatialGrid& grid, const Potential& pot,
                   const ModelParams& params);

// Survival bookkeeping of a walker ensemble. alive_after_step[k] is the
// number of paths still alive after k steps (entry 0 is the launch count),
// so the chain of ratios alive[k+1]/alive[k] telescopes to the survival
// fraction. bin_counts histograms the arrival sites of surviving paths.
struct EnsembleTally {
    std::vector<std::uint64_t> bin_counts;
    std::vector<std::uint64_t> alive_after_step;
    std::uint64_t n_paths = 0;
    std::uint64_t n_survived = 0;
    std::size_t n_steps = 0;
    std::size_t start_site = 0;
    double dtau = 0.0;
    // Killing needs a nonnegative rate, so potentials with a negative
    // minimum are raised to zero during sampling and the removed constant
    // is restored here: estimates must be scaled by exp(-dtau*v_offset/hbar).
    double v_offset = 0.0;
};

// Entropy carried by a survival probability p_cl of the classical branch:
// S/hbar = ln W = -ln p_cl with W = 1/p_cl the ensemble enlargement factor.
struct SpinBudget {
    double s_over_hbar = 0.0;
    double enlargement = 1.0;
    double bits = 0.0;
};

SpinBudget spin_budget(double p_cl);

// Inverse of spin_budget: the branch probability exp(-S/hbar) selected by a
// given budget.
double classical_probability(double s_over_hbar);

// Product of per-step survival ratios. Telescopes to the overall survival
// fraction, but the factored form is what a layer-by-layer history records.
double enlarged_ensemble_ratio(const std::vector<double>& step_ratios);

// Same, from a survivor-count history (entry 0 is the launch count).
double enlarged_ensemble_ratio(const std::vector<std::uint64_t>& alive);

enum class Exec { Serial, Parallel };

// Gaussian-step walkers with killing. Each step adds an increment of
// variance hbar*eps/m and then survives with probability
// exp(-eps*(V(gamma_k)+V(gamma_{k+1}))/(2 hbar)) (same trapezoid weights as
// path_action, so the sampled measure matches exp(-S/hbar) exactly rather
// than to O(eps)). Path i draws from the stream (seed, i) whichever
// execution policy runs, so serial and parallel tallies are identical.
EnsembleTally sample_paths(const SpatialGrid& grid, const Potential& pot,
                           const ModelParams& params, double dtau,
                           std::size_t n_steps, std::uint64_t n_paths,
                           std::size_t start_site, std::uint64_t seed,
                           Exec exec = Exec::Parallel);

// Single path with full trajectory retained; stream-compatible with
// sample_paths (path i of the same seed takes the same steps).
PathSample sample_one_path(const SpatialGrid& grid, const Potential& pot,
                           const ModelParams& params, double dtau,
                           std::size_t n_steps, std::size_t start_site,
                           std::uint64_t seed, std::uint64_t path_index);

// Density estimate of the kernel column P(q_j, dtau | q_start, 0) from a
// tally: counts / (n_paths * dq), rescaled by the killing offset. Second
// column of the result is the binomial standard error per bin.
Eigen::MatrixX2d mc_kernel_estimate(const EnsembleTally& tally,
                                    const SpatialGrid& grid,
                                    const ModelParams& params);

// Strang split-step transfer kernel: M factors of
//   exp(-eps V / 2 hbar) expm(-eps T / hbar) exp(-eps V / 2 hbar)
// composed in the grid measure (density normalization 1/dq like
// imaginary_kernel). The kinetic factor is the exact dense exponential of
// the stencil, so all error is operator splitting and vanishes as M^-2.
Eigen::MatrixXd trotter_kernel(const SpatialGrid& grid, const Potential& pot,
                               const ModelParams& params, double dtau,
                               std::size_t n_factors,
                               Stencil stencil = Stencil::ThreePoint,
                               Exec exec = Exec::Parallel);

}  // namespace pathlab
