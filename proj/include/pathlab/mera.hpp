#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pathlab/rng.hpp"

namespace pathlab {

using Amp = std::complex<double>;

// Coarse-graining tensor of one site. w maps a pair of fine sites to one
// coarse site and satisfies w w^dagger = 1 (2x2); the adjoint embeds,
// w^dagger w is the rank-2 projector onto the embedded subspace.
struct Isometry {
    Eigen::Matrix<Amp, 2, 4> w;
};

// Two-site unitary acting across neighbouring embedded pairs.
struct Disentangler {
    Eigen::Matrix<Amp, 4, 4> u;
};

// One renormalization layer acting top-down on a row of width w: every
// coarse site is embedded by its isometry (width w -> 2w), then entangler p
// acts on the straddling pair (2p+1, 2p+2 mod 2w), so neighbouring embedded
// blocks get correlated. A layer holds w isometries and w entanglers.
struct MeraLayer {
    std::vector<Isometry> isometries;
    std::vector<Disentangler> entanglers;
};

// Tensor network generating an n_bottom-site boundary state from a top
// state on n_top sites through layers that double the width each time:
// n_bottom = n_top * 2^(number of layers). States are dense, qubit 0 is the
// most significant bit, and n_bottom is capped at 16 sites.
struct MeraNetwork {
    std::size_t n_top = 0;
    std::size_t n_bottom = 0;
    std::vector<MeraLayer> layers;
    Eigen::VectorXcd top_state;

    std::size_t disentangler_count() const {
        std::size_t c = 0;
        for (const auto& l : layers) c += l.entanglers.size();
        return c;
    }
};

// Classical branch after dephasing in the site basis: just the outcome
// probabilities of a full measurement.
struct ClassicalMixedState {
    Eigen::VectorXd probs;
};

Isometry copy_isometry();                 // w^dagger |b> = |b>|0>
Isometry random_isometry(StreamRng& rng); // Haar 2-frame via QR
Disentangler identity_disentangler();
Disentangler bell_entangler();            // |00> -> (|00>+|11>)/sqrt(2)
Disentangler random_disentangler(StreamRng& rng);

// Residuals of the defining relations, as max-norm deviations.
double isometry_residual(const Isometry& iso);
double projector_residual(const Isometry& iso);
double unitarity_residual(const Disentangler& ent);

// Haar-random network with the given shape; n_bottom/n_top must be a power
// of two. Top state is a normalized random vector.
MeraNetwork random_network(std::size_t n_bottom, std::size_t n_top,
                           std::uint64_t seed);

// Single layer of copy isometries and Bell entanglers on top of |0...0>:
// the boundary state is a product of n_bottom/2 Bell pairs, one per
// entangler, i.e. exactly one bit of measurement entropy per tensor site.
MeraNetwork bell_network(std::size_t n_bottom);

// Run the network top-down: embed every site, then apply the entangler row,
// layer by layer. Returns the normalized boundary state (norm is preserved
// by construction; a deviation beyond roundoff throws).
Eigen::VectorXcd apply_network(const MeraNetwork& net);

ClassicalMixedState classicalize(const Eigen::VectorXcd& state);

// Shannon entropy -sum p log2 p in bits; 0 log 0 reads as 0.
double measurement_entropy_bits(const ClassicalMixedState& state);

// Euclidean action carried by the network alone: -hbar * ln 2 * A_TN with
// A_TN the disentangler count (one bit of capacity per tensor site).
double bulk_action(std::size_t n_disentanglers, double hbar = 1.0);

// Network action plus the positive spin-budget contribution S.
double combined_action(std::size_t n_disentanglers, double s_budget,
                       double hbar = 1.0);

// Exact entanglement entropy (bits) of the contiguous site interval
// [first, first+len) of a pure boundary state on n sites; the interval may
// wrap. Computed from the Schmidt spectrum of the bipartition.
double interval_entanglement_bits(const Eigen::VectorXcd& state,
                                  std::size_t n_sites, std::size_t first,
                                  std::size_t len);

// Smallest number of network legs that must be cut to separate the interval
// from its complement, in bits (one bit per cut leg). Purely structural;
// computed by max-flow over the tensor graph, and an upper bound on
// interval_entanglement_bits for any tensor assignment.
double minimal_cut_entropy(const MeraNetwork& net, std::size_t first,
                           std::size_t len);

}  // namespace pathlab
