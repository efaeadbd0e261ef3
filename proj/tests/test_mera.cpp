#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "pathlab/info.hpp"
#include "pathlab/mera.hpp"
#include "pathlab/rng.hpp"

using namespace pathlab;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

MeraNetwork trivial_network(std::size_t n_bottom, const Eigen::VectorXcd& top) {
    MeraNetwork net;
    net.n_top = 1;
    net.n_bottom = n_bottom;
    net.top_state = top;
    for (std::size_t w = 1; w < n_bottom; w *= 2) {
        MeraLayer layer;
        for (std::size_t i = 0; i < w; ++i) {
            layer.isometries.push_back(copy_isometry());
            layer.entanglers.push_back(identity_disentangler());
        }
        net.layers.push_back(std::move(layer));
    }
    return net;
}

// Reference entropy through an explicitly assembled reduced density matrix;
// shares nothing with the Schmidt-spectrum route in the library.
double rdm_entropy_bits(const Eigen::VectorXcd& state, std::size_t n,
                        std::size_t first, std::size_t len) {
    const std::size_t da = std::size_t(1) << len;
    const std::size_t db = std::size_t(1) << (n - len);
    const std::size_t suffix = n - first - len;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
    for (std::size_t i = 0; i < da * db; ++i) {
        const std::size_t ai = (i >> suffix) & (da - 1);
        const std::size_t hi = i >> (suffix + len);
        const std::size_t lo = i & ((std::size_t(1) << suffix) - 1);
        for (std::size_t aj = 0; aj < da; ++aj) {
            const std::size_t j = (hi << (suffix + len)) | (aj << suffix) | lo;
            rho(static_cast<Eigen::Index>(ai), static_cast<Eigen::Index>(aj)) +=
                state[static_cast<Eigen::Index>(i)] *
                std::conj(state[static_cast<Eigen::Index>(j)]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    double h = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const double p = solver.eigenvalues()[k];
        if (p > 1e-14) h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

TEST_CASE("preset tensors satisfy their defining relations exactly") {
    CHECK(isometry_residual(copy_isometry()) == 0.0);
    CHECK(projector_residual(copy_isometry()) == 0.0);
    CHECK(unitarity_residual(identity_disentangler()) == 0.0);
    CHECK(unitarity_residual(bell_entangler()) < 1e-15);

    const Disentangler bell = bell_entangler();
    CHECK(bell.u(0, 0).real() == doctest::Approx(kInvSqrt2));
    CHECK(bell.u(3, 0).real() == doctest::Approx(kInvSqrt2));
    CHECK(std::abs(bell.u(1, 0)) == 0.0);
    CHECK(std::abs(bell.u(2, 0)) == 0.0);
}

TEST_CASE("random tensors are constrained, reproducible, and distinct") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        StreamRng rng(seed, 0);
        const Isometry iso = random_isometry(rng);
        CHECK(isometry_residual(iso) < 1e-13);
        CHECK(projector_residual(iso) < 1e-13);
        const Disentangler ent = random_disentangler(rng);
        CHECK(unitarity_residual(ent) < 1e-13);
    }
    StreamRng a1(7, 0), a2(7, 0), b(8, 0);
    const Isometry i1 = random_isometry(a1);
    const Isometry i2 = random_isometry(a2);
    const Isometry i3 = random_isometry(b);
    CHECK((i1.w - i2.w).cwiseAbs().maxCoeff() == 0.0);
    CHECK((i1.w - i3.w).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("a copy-only network embeds the top state untouched") {
    Eigen::VectorXcd top(2);
    top << 0.6, 0.8;
    const MeraNetwork net = trivial_network(4, top);
    const Eigen::VectorXcd state = apply_network(net);
    CHECK(state.size() == 16);
    CHECK(state[0].real() == doctest::Approx(0.6));
    CHECK(state[8].real() == doctest::Approx(0.8));  // |1000>, qubit 0 is MSB
    CHECK(state.cwiseAbs().sum() == doctest::Approx(1.4));  // nothing else
    CHECK(state.norm() == doctest::Approx(1.0));
}

TEST_CASE("bell preset produces one bell pair per entangler") {
    const MeraNetwork net = bell_network(2);
    CHECK(net.disentangler_count() == 1);
    const Eigen::VectorXcd state = apply_network(net);
    CHECK(state[0].real() == doctest::Approx(kInvSqrt2));
    CHECK(state[3].real() == doctest::Approx(kInvSqrt2));
    CHECK(std::abs(state[1]) + std::abs(state[2]) == 0.0);

    const double entropy = measurement_entropy_bits(classicalize(state));
    CHECK(std::abs(entropy - 1.0) < 1e-12);

    // each bottom site is half of a maximally entangled pair: the one-leg
    // cut is saturated
    CHECK(minimal_cut_entropy(net, 0, 1) == 1.0);
    CHECK(std::abs(interval_entanglement_bits(state, 2, 0, 1) - 1.0) < 1e-12);
}

TEST_CASE("six-site bell preset carries three bits of branch entropy") {
    const MeraNetwork net = bell_network(6);
    CHECK(net.n_top == 3);
    CHECK(net.disentangler_count() == 3);
    const Eigen::VectorXcd state = apply_network(net);
    const ClassicalMixedState mixed = classicalize(state);
    CHECK(std::abs(mixed.probs.sum() - 1.0) < 1e-12);
    CHECK(std::abs(measurement_entropy_bits(mixed) - 3.0) < 1e-12);
    // 2^3 equally likely outcomes, amplitude (1/sqrt2)^3 each
    int nonzero = 0;
    for (Eigen::Index i = 0; i < state.size(); ++i)
        if (std::abs(state[i]) > 1e-12) {
            ++nonzero;
            CHECK(std::abs(state[i]) == doctest::Approx(std::pow(kInvSqrt2, 3)));
        }
    CHECK(nonzero == 8);
}

TEST_CASE("random networks preserve the norm and stay under capacity") {
    for (const auto& [bottom, top] : {std::pair<std::size_t, std::size_t>{8, 1},
                                      {12, 3}, {8, 2}}) {
        const MeraNetwork net = random_network(bottom, top, 42);
        const Eigen::VectorXcd state = apply_network(net);
        CHECK(std::abs(state.norm() - 1.0) < 1e-12);
        const double entropy = measurement_entropy_bits(classicalize(state));
        CHECK(entropy >= 0.0);
        CHECK(entropy <= double(bottom));  // hard cap: one bit per qubit
    }
}

TEST_CASE("schmidt entropy agrees with an explicit density matrix") {
    StreamRng rng(31, 0);
    Eigen::VectorXcd state(64);
    for (Eigen::Index i = 0; i < state.size(); ++i)
        state[i] = rng.complex_normal();
    state.normalize();

    for (std::size_t first : {0u, 2u}) {
        for (std::size_t len : {1u, 3u}) {
            const double via_schmidt =
                interval_entanglement_bits(state, 6, first, len);
            const double via_rho = rdm_entropy_bits(state, 6, first, len);
            CHECK(via_schmidt == doctest::Approx(via_rho).epsilon(1e-9));
        }
    }

    // a wrapped interval is the complement of a contiguous one
    const double wrapped = interval_entanglement_bits(state, 6, 4, 4);
    const double complement = interval_entanglement_bits(state, 6, 2, 2);
    CHECK(wrapped == doctest::Approx(complement).epsilon(1e-10));

    // product state across the cut: no entanglement
    Eigen::VectorXcd product = Eigen::VectorXcd::Zero(16);
    product[0] = kInvSqrt2;
    product[4] = kInvSqrt2;  // qubit 1 in superposition, the rest |0>
    CHECK(interval_entanglement_bits(product, 4, 0, 2) < 1e-12);

    CHECK_THROWS_AS(interval_entanglement_bits(state, 6, 0, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(interval_entanglement_bits(state, 6, 0, 6),
                    std::invalid_argument);
    CHECK_THROWS_AS(interval_entanglement_bits(state, 5, 0, 2),
                    std::invalid_argument);
}

TEST_CASE("minimal cuts match hand counts on small networks") {
    Eigen::VectorXcd top(2);
    top << 1.0, 0.0;
    const MeraNetwork tiny = trivial_network(4, top);
    CHECK(minimal_cut_entropy(tiny, 0, 1) == 1.0);
    CHECK(minimal_cut_entropy(tiny, 1, 2) == 2.0);
    CHECK(minimal_cut_entropy(tiny, 0, 2) == 2.0);
    CHECK(minimal_cut_entropy(tiny, 3, 2) == 2.0);  // wraps over the edge

    const MeraNetwork bell8 = bell_network(8);
    CHECK(minimal_cut_entropy(bell8, 0, 1) == 1.0);
    CHECK(minimal_cut_entropy(bell8, 1, 2) == 2.0);  // one full pair inside
    CHECK(minimal_cut_entropy(bell8, 0, 4) == 4.0);

    CHECK_THROWS_AS(minimal_cut_entropy(bell8, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(minimal_cut_entropy(bell8, 0, 8), std::invalid_argument);
}

TEST_CASE("the cut through the network bounds interval entanglement") {
    const MeraNetwork net = random_network(8, 1, 5);
    const Eigen::VectorXcd state = apply_network(net);
    for (std::size_t len = 1; len < 8; ++len)
        for (std::size_t first = 0; first < 8; ++first) {
            const double cut = minimal_cut_entropy(net, first, len);
            const double ent =
                interval_entanglement_bits(state, 8, first, len);
            CHECK(ent <= cut + 1e-9);
            CHECK(cut <= double(std::min(len, 8 - len)));  // boundary legs
        }

    // deeper network: a short interval never needs more cut than a long one
    const MeraNetwork deep = random_network(16, 1, 9);
    CHECK(minimal_cut_entropy(deep, 0, 4) <= minimal_cut_entropy(deep, 0, 8));
}

TEST_CASE("network actions count capacity in units of hbar ln 2") {
    const double ln2 = std::log(2.0);
    CHECK(bulk_action(15) == doctest::Approx(-15.0 * ln2));
    CHECK(bulk_action(0) == 0.0);
    CHECK(bulk_action(4, 2.0) == doctest::Approx(-8.0 * ln2));
    CHECK(combined_action(3, 1.7) == doctest::Approx(-3.0 * ln2 + 1.7));
    // the budget term enters with the opposite sign: pure network action is
    // the most negative the combination can get
    CHECK(combined_action(3, 1.7) > bulk_action(3));
}

TEST_CASE("malformed networks are rejected before any contraction") {
    CHECK_THROWS_AS(random_network(32, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_network(12, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_network(8, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(bell_network(7), std::invalid_argument);
    CHECK_THROWS_AS(bell_network(18), std::invalid_argument);

    MeraNetwork broken = bell_network(4);
    broken.layers[0].entanglers.pop_back();
    CHECK_THROWS_AS(apply_network(broken), std::invalid_argument);

    MeraNetwork denormal = bell_network(4);
    denormal.top_state *= 2.0;
    CHECK_THROWS_AS(apply_network(denormal), std::invalid_argument);
}
