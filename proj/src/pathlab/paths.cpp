#include "pathlab/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pathlab/rng.hpp"

namespace pathlab {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

// Only potentials with a negative minimum get raised; a positive constant
// should keep killing walkers for real, not be shifted into triviality.
double killing_offset(const SpatialGrid& grid, const Potential& pot) {
    const Eigen::VectorXd v = pot.sample(grid);
    return std::min(0.0, v.minCoeff());
}

struct WalkResult {
    double arrival = 0.0;
    std::size_t steps_survived = 0;
    bool alive = false;
};

// One walker. Draw order per step is fixed (increment, then the survival
// coin), so a path is identified by (seed, path_index) alone.
WalkResult walk(const SpatialGrid& grid, const Potential& pot, double hbar,
                double mass, double eps, std::size_t n_steps, double q0,
                double v_offset, std::uint64_t seed, std::uint64_t index,
                std::vector<double>* trace) {
    StreamRng rng(seed, index);
    const double sigma = std::sqrt(hbar * eps / mass);
    WalkResult r;
    double q = q0;
    double v_here = pot.value_on(grid, q) - v_offset;
    if (trace) trace->push_back(q);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double q_next = q + sigma * rng.normal();
        const double v_next = pot.value_on(grid, q_next) - v_offset;
        const double p_survive =
            std::exp(-eps * 0.5 * (v_here + v_next) / hbar);
        const double coin = rng.uniform();
        if (trace) trace->push_back(q_next);
        if (coin >= p_survive) {
            r.steps_survived = k;
            r.alive = false;
            return r;
        }
        q = q_next;
        v_here = v_next;
    }
    r.arrival = q;
    r.steps_survived = n_steps;
    r.alive = true;
    return r;
}

void accumulate(EnsembleTally& tally, const SpatialGrid& grid,
                const WalkResult& r) {
    for (std::size_t k = 0; k <= r.steps_survived; ++k)
        ++tally.alive_after_step[k];
    if (r.alive) {
        ++tally.n_survived;
        ++tally.bin_counts[grid.nearest_site(r.arrival)];
    }
}

}  // namespace

double path_action(const std::vector<double>& points, double eps,
                   const SpatialGrid& grid, const Potential& pot,
                   const ModelParams& params) {
    if (points.size() < 2)
        throw std::invalid_argument("path_action: need at least two points");
    if (!(eps > 0.0))
        throw std::invalid_argument("path_action: step size must be > 0");
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const double d = (points[k + 1] - points[k]) / eps;
        const double v = 0.5 * (pot.value_on(grid, points[k]) +
                                pot.value_on(grid, points[k + 1]));
        s += eps * (0.5 * params.mass * d * d + v);
    }
    return s;
}

SpinBudget spin_budget(double p_cl) {
    if (!(p_cl > 0.0) || p_cl > 1.0)
        throw std::domain_error("spin_budget: probability must be in (0, 1]");
    SpinBudget b;
    b.s_over_hbar = -std::log(p_cl);
    b.enlargement = 1.0 / p_cl;
    b.bits = b.s_over_hbar / kLn2;
    return b;
}

double classical_probability(double s_over_hbar) {
    if (s_over_hbar < 0.0)
        throw std::domain_error(
            "classical_probability: budget must be nonnegative");
    return std::exp(-s_over_hbar);
}

double enlarged_ensemble_ratio(const std::vector<double>& step_ratios) {
    if (step_ratios.empty())
        throw std::invalid_argument(
            "enlarged_ensemble_ratio: need at least one ratio");
    double ratio = 1.0;
    for (const double r : step_ratios) {
        if (!(r >= 0.0) || r > 1.0)
            throw std::invalid_argument(
                "enlarged_ensemble_ratio: ratios must be in [0, 1]");
        ratio *= r;
    }
    return ratio;
}

double enlarged_ensemble_ratio(const std::vector<std::uint64_t>& alive) {
    if (alive.size() < 2 || alive.front() == 0)
        throw std::invalid_argument(
            "enlarged_ensemble_ratio: need a launch count and one step");
    double ratio = 1.0;
    for (std::size_t k = 0; k + 1 < alive.size(); ++k) {
        if (alive[k + 1] > alive[k])
            throw std::invalid_argument(
                "enlarged_ensemble_ratio: survivor count increased");
        // a fully killed ensemble has ratio 0; later factors stay 0/0-free
        ratio *= alive[k] == 0
                     ? 0.0
                     : double(alive[k + 1]) / double(alive[k]);
    }
    return ratio;
}

EnsembleTally sample_paths(const SpatialGrid& grid, const Potential& pot,
                           const ModelParams& params, double dtau,
                           std::size_t n_steps, std::uint64_t n_paths,
                           std::size_t start_site, std::uint64_t seed,
                           Exec exec) {
    if (n_steps == 0)
        throw std::invalid_argument("sample_paths: need at least one step");
    if (!(dtau > 0.0))
        throw std::invalid_argument("sample_paths: dtau must be > 0");
    if (start_site >= grid.n)
        throw std::invalid_argument("sample_paths: start site out of range");
    const double eps = dtau / double(n_steps);
    const double q0 = grid.site(start_site);
    const double v_offset = killing_offset(grid, pot);

    EnsembleTally tally;
    tally.bin_counts.assign(grid.n, 0);
    tally.alive_after_step.assign(n_steps + 1, 0);
    tally.n_paths = n_paths;
    tally.n_steps = n_steps;
    tally.start_site = start_site;
    tally.dtau = dtau;
    tally.v_offset = v_offset;

    if (exec == Exec::Serial) {
        for (std::uint64_t i = 0; i < n_paths; ++i)
            accumulate(tally, grid,
                       walk(grid, pot, params.hbar, params.mass, eps, n_steps,
                            q0, v_offset, seed, i, nullptr));
        return tally;
    }

#ifdef _OPENMP
    const int n_threads = omp_get_max_threads();
#else
    const int n_threads = 1;
#endif
    std::vector<EnsembleTally> partial(static_cast<std::size_t>(n_threads));
    for (auto& t : partial) {
        t.bin_counts.assign(grid.n, 0);
        t.alive_after_step.assign(n_steps + 1, 0);
    }
#ifdef _OPENMP
#pragma omp parallel num_threads(n_threads)
    {
        EnsembleTally& mine =
            partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_paths); ++i)
            accumulate(mine, grid,
                       walk(grid, pot, params.hbar, params.mass, eps, n_steps,
                            q0, v_offset, seed,
                            static_cast<std::uint64_t>(i), nullptr));
    }
#else
    for (std::uint64_t i = 0; i < n_paths; ++i)
        accumulate(partial[0], grid,
                   walk(grid, pot, params.hbar, params.mass, eps, n_steps, q0,
                        v_offset, seed, i, nullptr));
#endif
    // integer merge in thread order: the combined tally is bit-identical to
    // the serial one no matter how the loop was scheduled
    for (const auto& t : partial) {
        tally.n_survived += t.n_survived;
        for (std::size_t j = 0; j < grid.n; ++j)
            tally.bin_counts[j] += t.bin_counts[j];
        for (std::size_t k = 0; k <= n_steps; ++k)
            tally.alive_after_step[k] += t.alive_after_step[k];
    }
    return tally;
}

PathSample sample_one_path(const SpatialGrid& grid, const Potential& pot,
                           const ModelParams& params, double dtau,
                           std::size_t n_steps, std::size_t start_site,
                           std::uint64_t seed, std::uint64_t path_index) {
    if (n_steps == 0)
        throw std::invalid_argument("sample_one_path: need at least one step");
    const double eps = dtau / double(n_steps);
    const double v_offset = killing_offset(grid, pot);
    PathSample sample;
    sample.points.reserve(n_steps + 1);
    const WalkResult r =
        walk(grid, pot, params.hbar, params.mass, eps, n_steps,
             grid.site(start_site), v_offset, seed, path_index,
             &sample.points);
    sample.alive = r.alive;
    sample.kill_step = r.alive ? n_steps : r.steps_survived + 1;
    return sample;
}

Eigen::MatrixX2d mc_kernel_estimate(const EnsembleTally& tally,
                                    const SpatialGrid& grid,
                                    const ModelParams& params) {
    if (tally.bin_counts.size() != grid.n)
        throw std::invalid_argument("mc_kernel_estimate: tally/grid mismatch");
    if (tally.n_paths == 0)
        throw std::invalid_argument("mc_kernel_estimate: empty ensemble");
    const double n = double(tally.n_paths);
    // undo the killing offset: sampling used V - v_offset
    const double factor =
        std::exp(-tally.dtau * tally.v_offset / params.hbar);
    Eigen::MatrixX2d est(grid.n, 2);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double p = double(tally.bin_counts[j]) / n;
        est(static_cast<Eigen::Index>(j), 0) = factor * p / grid.dq;
        est(static_cast<Eigen::Index>(j), 1) =
            factor * std::sqrt(p * (1.0 - p) / n) / grid.dq;
    }
    return est;
}

namespace {

// C = A * B with a fixed per-row accumulation order. The parallel variant
// splits rows across threads; each row's arithmetic is untouched, so both
// variants agree bitwise.
Eigen::MatrixXd matmul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                       Exec exec) {
    const Eigen::Index n = a.rows();
    const Eigen::Index m = b.cols();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m);
    const bool parallel = exec == Exec::Parallel;
    (void)parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (Eigen::Index j = 0; j < m; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Eigen::MatrixXd matpow(Eigen::MatrixXd base, std::size_t e, Exec exec) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(base.rows(), base.cols());
    while (e > 0) {
        if (e & 1) out = matmul(out, base, exec);
        e >>= 1;
        if (e > 0) base = matmul(base, base, exec);
    }
    return out;
}

}  // namespace

Eigen::MatrixXd trotter_kernel(const SpatialGrid& grid, const Potential& pot,
                               const ModelParams& params, double dtau,
                               std::size_t n_factors, Stencil stencil,
                               Exec exec) {
    if (n_factors == 0)
        throw std::invalid_argument("trotter_kernel: need at least 1 factor");
    if (!(dtau > 0.0))
        throw std::invalid_argument("trotter_kernel: dtau must be > 0");
    const double eps = dtau / double(n_factors);
    const Eigen::MatrixXd t = build_kinetic(grid, params, stencil);
    // exact kinetic exponential through the stencil's own eigenbasis; all
    // remaining error is the operator splitting
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("trotter_kernel: kinetic eigensolve failed");
    const Eigen::VectorXd expt =
        (-eps / params.hbar * solver.eigenvalues().array()).exp();
    const Eigen::MatrixXd kin = solver.eigenvectors() * expt.asDiagonal() *
                                solver.eigenvectors().transpose();
    const Eigen::VectorXd half =
        (-0.5 * eps / params.hbar * pot.sample(grid).array()).exp();
    const Eigen::MatrixXd step =
        half.asDiagonal() * kin * half.asDiagonal();
    // density normalization 1/dq, matching imaginary_kernel
    return matpow(step, n_factors, exec) / grid.dq;
}

}  // namespace pathlab
