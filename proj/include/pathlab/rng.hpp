#pragma once

#include <cstdint>
#include <complex>
#include <random>

namespace pathlab {

// Counter-based stream derivation: every consumer (path index, tensor index,
// ...) gets its own generator keyed by (seed, stream). Parallel and serial
// runs therefore draw identical values regardless of scheduling.
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic stream generator. Gaussian variates use Box-Muller on top of
// the fully standardized mt19937_64 bit stream, so results do not depend on
// the C++ library's (implementation-defined) std::normal_distribution.
class StreamRng {
  public:
    StreamRng(std::uint64_t seed, std::uint64_t stream)
        : engine_(mix64(seed, stream)) {}

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0, 1]; safe as a log() argument.
    double uniform_pos() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace pathlab
