// Timing comparison between the serial reference and the OpenMP variants of
// the two hot kernels (walker sampling, split-step composition), plus a
// bitwise agreement check: the parallel code must reproduce the serial
// tallies and matrices exactly, not just statistically.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pathlab/grid.hpp"
#include "pathlab/paths.hpp"

using namespace pathlab;

namespace {

template <typename F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t n_paths = 200000;
    std::size_t steps = 128;
    if (argc > 1) n_paths = std::strtoull(argv[1], nullptr, 10);
    if (argc > 2) steps = std::strtoull(argv[2], nullptr, 10);

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled in this build\n");
#endif

    const SpatialGrid grid(128, 12.0);
    const Potential pot = Potential::harmonic(1.0);
    const ModelParams params;

    EnsembleTally serial_tally, parallel_tally;
    const double t_serial = timed([&] {
        serial_tally = sample_paths(grid, pot, params, 1.0, steps, n_paths,
                                    grid.n / 2, 42, Exec::Serial);
    });
    const double t_parallel = timed([&] {
        parallel_tally = sample_paths(grid, pot, params, 1.0, steps, n_paths,
                                      grid.n / 2, 42, Exec::Parallel);
    });
    const bool same_tally =
        serial_tally.bin_counts == parallel_tally.bin_counts &&
        serial_tally.alive_after_step == parallel_tally.alive_after_step;
    std::printf("sample_paths   %8llu paths x %4zu steps  serial %7.3fs  "
                "parallel %7.3fs  speedup %5.2fx  identical %s\n",
                static_cast<unsigned long long>(n_paths), steps, t_serial,
                t_parallel, t_serial / t_parallel, same_tally ? "yes" : "NO");

    Eigen::MatrixXd k_serial, k_parallel;
    const double t_kser = timed([&] {
        k_serial = trotter_kernel(grid, pot, params, 1.0, 256,
                                  Stencil::ThreePoint, Exec::Serial);
    });
    const double t_kpar = timed([&] {
        k_parallel = trotter_kernel(grid, pot, params, 1.0, 256,
                                    Stencil::ThreePoint, Exec::Parallel);
    });
    const bool same_kernel = (k_serial - k_parallel).cwiseAbs().maxCoeff() ==
                             0.0;
    std::printf("trotter_kernel %8d sites x %4d factors  serial %7.3fs  "
                "parallel %7.3fs  speedup %5.2fx  identical %s\n", 128, 256,
                t_kser, t_kpar, t_kser / t_kpar, same_kernel ? "yes" : "NO");

    return same_tally && same_kernel ? 0 : 1;
}
