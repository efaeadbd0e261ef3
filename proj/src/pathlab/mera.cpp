#include "pathlab/mera.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "pathlab/info.hpp"

namespace pathlab {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

template <typename Mat>
Mat gaussian_matrix(StreamRng& rng) {
    Mat g;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            g(i, j) = rng.complex_normal();
    return g;
}

// QR with the R-diagonal phase absorbed into Q: makes the frame Haar
// distributed and the construction deterministic across platforms' QR sign
// choices.
template <typename Mat>
void phase_fix_columns(Mat& q, const Eigen::MatrixXcd& r) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Amp d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= std::conj(d) / mag;
    }
}

// Replace the qubit at position pos (0 = most significant) by two qubits
// through the 4x2 embedding map. Suffix bits keep their place; the register
// grows by one bit.
Eigen::VectorXcd expand_qubit(const Eigen::VectorXcd& state,
                              std::size_t n_bits, std::size_t pos,
                              const Eigen::Matrix<Amp, 4, 2>& wdag) {
    const std::size_t suffix = n_bits - pos - 1;
    Eigen::VectorXcd out =
        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(2 * state.size()));
    for (std::size_t hi = 0; hi < (std::size_t(1) << pos); ++hi)
        for (std::size_t lo = 0; lo < (std::size_t(1) << suffix); ++lo) {
            const std::size_t o0 = (hi << (1 + suffix)) | lo;
            const std::size_t o1 = o0 | (std::size_t(1) << suffix);
            const Amp a0 = state[static_cast<Eigen::Index>(o0)];
            const Amp a1 = state[static_cast<Eigen::Index>(o1)];
            for (std::size_t c = 0; c < 4; ++c) {
                const Amp v = wdag(static_cast<Eigen::Index>(c), 0) * a0 +
                              wdag(static_cast<Eigen::Index>(c), 1) * a1;
                if (v != Amp(0.0, 0.0)) {
                    const std::size_t idx = (hi << (2 + suffix)) |
                                            (c << suffix) | lo;
                    out[static_cast<Eigen::Index>(idx)] += v;
                }
            }
        }
    return out;
}

// In-place two-qubit gate on positions (a, b); a supplies the most
// significant bit of the gate index.
void apply_two_qubit(Eigen::VectorXcd& state, std::size_t n_bits,
                     std::size_t a, std::size_t b,
                     const Eigen::Matrix<Amp, 4, 4>& u) {
    const std::size_t mask_a = std::size_t(1) << (n_bits - 1 - a);
    const std::size_t mask_b = std::size_t(1) << (n_bits - 1 - b);
    const auto dim = static_cast<std::size_t>(state.size());
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if ((idx & mask_a) != 0 || (idx & mask_b) != 0) continue;
        const Eigen::Index i00 = static_cast<Eigen::Index>(idx);
        const Eigen::Index i01 = static_cast<Eigen::Index>(idx | mask_b);
        const Eigen::Index i10 = static_cast<Eigen::Index>(idx | mask_a);
        const Eigen::Index i11 =
            static_cast<Eigen::Index>(idx | mask_a | mask_b);
        const Eigen::Vector4cd in(state[i00], state[i01], state[i10],
                                  state[i11]);
        const Eigen::Vector4cd out = u * in;
        state[i00] = out[0];
        state[i01] = out[1];
        state[i10] = out[2];
        state[i11] = out[3];
    }
}

void check_shape(const MeraNetwork& net) {
    if (net.n_bottom == 0 || net.n_bottom > 16)
        throw std::invalid_argument(
            "MeraNetwork: bottom width must be in [1, 16]");
    std::size_t w = net.n_top;
    for (const auto& layer : net.layers) {
        if (layer.isometries.size() != w || layer.entanglers.size() != w)
            throw std::invalid_argument(
                "MeraNetwork: layer width does not match the doubling shape");
        w *= 2;
    }
    if (w != net.n_bottom)
        throw std::invalid_argument(
            "MeraNetwork: layers do not reach the bottom width");
    if (net.top_state.size() !=
        static_cast<Eigen::Index>(std::size_t(1) << net.n_top))
        throw std::invalid_argument("MeraNetwork: top state has wrong size");
}

}  // namespace

Isometry copy_isometry() {
    Isometry iso;
    iso.w.setZero();
    iso.w(0, 0) = 1.0;  // |00> -> |0>
    iso.w(1, 2) = 1.0;  // |10> -> |1>
    return iso;
}

Isometry random_isometry(StreamRng& rng) {
    const Eigen::Matrix<Amp, 4, 2> g = gaussian_matrix<Eigen::Matrix<Amp, 4, 2>>(rng);
    Eigen::HouseholderQR<Eigen::Matrix<Amp, 4, 2>> qr(g);
    Eigen::Matrix<Amp, 4, 2> q =
        qr.householderQ() * Eigen::Matrix<Amp, 4, 2>::Identity();
    phase_fix_columns(q, qr.matrixQR());
    Isometry iso;
    iso.w = q.adjoint();
    return iso;
}

Disentangler identity_disentangler() {
    Disentangler ent;
    ent.u.setIdentity();
    return ent;
}

Disentangler bell_entangler() {
    Disentangler ent;
    ent.u.setZero();
    ent.u(0, 0) = kInvSqrt2;
    ent.u(3, 0) = kInvSqrt2;
    ent.u(1, 1) = kInvSqrt2;
    ent.u(2, 1) = kInvSqrt2;
    ent.u(0, 2) = kInvSqrt2;
    ent.u(3, 2) = -kInvSqrt2;
    ent.u(1, 3) = kInvSqrt2;
    ent.u(2, 3) = -kInvSqrt2;
    return ent;
}

Disentangler random_disentangler(StreamRng& rng) {
    const Eigen::Matrix<Amp, 4, 4> g = gaussian_matrix<Eigen::Matrix<Amp, 4, 4>>(rng);
    Eigen::HouseholderQR<Eigen::Matrix<Amp, 4, 4>> qr(g);
    Eigen::Matrix<Amp, 4, 4> q =
        qr.householderQ() * Eigen::Matrix<Amp, 4, 4>::Identity();
    phase_fix_columns(q, qr.matrixQR());
    Disentangler ent;
    ent.u = q;
    return ent;
}

double isometry_residual(const Isometry& iso) {
    const Eigen::Matrix2cd r =
        iso.w * iso.w.adjoint() - Eigen::Matrix2cd::Identity();
    return r.cwiseAbs().maxCoeff();
}

double projector_residual(const Isometry& iso) {
    const Eigen::Matrix4cd pi = iso.w.adjoint() * iso.w;
    const double idem = (pi * pi - pi).cwiseAbs().maxCoeff();
    const double herm = (pi - pi.adjoint()).cwiseAbs().maxCoeff();
    return std::max(idem, herm);
}

double unitarity_residual(const Disentangler& ent) {
    const Eigen::Matrix4cd r =
        ent.u.adjoint() * ent.u - Eigen::Matrix4cd::Identity();
    return r.cwiseAbs().maxCoeff();
}

MeraNetwork random_network(std::size_t n_bottom, std::size_t n_top,
                           std::uint64_t seed) {
    if (n_top == 0 || n_bottom < n_top || n_bottom > 16)
        throw std::invalid_argument("random_network: bad widths");
    if (n_bottom % n_top != 0 || !is_power_of_two(n_bottom / n_top))
        throw std::invalid_argument(
            "random_network: bottom width must be top width times a power "
            "of two");
    StreamRng rng(seed, 0);
    MeraNetwork net;
    net.n_top = n_top;
    net.n_bottom = n_bottom;
    net.top_state.resize(static_cast<Eigen::Index>(std::size_t(1) << n_top));
    for (Eigen::Index i = 0; i < net.top_state.size(); ++i)
        net.top_state[i] = rng.complex_normal();
    net.top_state.normalize();
    for (std::size_t w = n_top; w < n_bottom; w *= 2) {
        MeraLayer layer;
        for (std::size_t i = 0; i < w; ++i)
            layer.isometries.push_back(random_isometry(rng));
        for (std::size_t i = 0; i < w; ++i)
            layer.entanglers.push_back(random_disentangler(rng));
        net.layers.push_back(std::move(layer));
    }
    return net;
}

MeraNetwork bell_network(std::size_t n_bottom) {
    if (n_bottom < 2 || n_bottom > 16 || n_bottom % 2 != 0)
        throw std::invalid_argument(
            "bell_network: bottom width must be even and in [2, 16]");
    MeraNetwork net;
    net.n_top = n_bottom / 2;
    net.n_bottom = n_bottom;
    net.top_state = Eigen::VectorXcd::Zero(
        static_cast<Eigen::Index>(std::size_t(1) << net.n_top));
    net.top_state[0] = 1.0;
    MeraLayer layer;
    for (std::size_t i = 0; i < net.n_top; ++i) {
        layer.isometries.push_back(copy_isometry());
        layer.entanglers.push_back(bell_entangler());
    }
    net.layers.push_back(std::move(layer));
    return net;
}

Eigen::VectorXcd apply_network(const MeraNetwork& net) {
    check_shape(net);
    if (std::abs(net.top_state.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("apply_network: top state not normalized");
    Eigen::VectorXcd state = net.top_state;
    std::size_t width = net.n_top;
    for (const auto& layer : net.layers) {
        // embed back to front so pending positions stay valid
        for (std::size_t i = width; i-- > 0;) {
            const Eigen::Matrix<Amp, 4, 2> wdag =
                layer.isometries[i].w.adjoint();
            state = expand_qubit(state, width + (width - 1 - i), i, wdag);
        }
        width *= 2;
        for (std::size_t p = 0; p < width / 2; ++p) {
            const std::size_t a = 2 * p + 1;
            const std::size_t b = (2 * p + 2) % width;
            apply_two_qubit(state, width, a, b, layer.entanglers[p].u);
        }
    }
    if (std::abs(state.norm() - 1.0) > 1e-9)
        throw std::runtime_error("apply_network: norm drifted");
    return state;
}

ClassicalMixedState classicalize(const Eigen::VectorXcd& state) {
    ClassicalMixedState mixed;
    mixed.probs = state.cwiseAbs2();
    return mixed;
}

double measurement_entropy_bits(const ClassicalMixedState& state) {
    return shannon_bits(state.probs);
}

double bulk_action(std::size_t n_disentanglers, double hbar) {
    return -hbar * kLn2 * double(n_disentanglers);
}

double combined_action(std::size_t n_disentanglers, double s_budget,
                       double hbar) {
    return bulk_action(n_disentanglers, hbar) + s_budget;
}

double interval_entanglement_bits(const Eigen::VectorXcd& state,
                                  std::size_t n_sites, std::size_t first,
                                  std::size_t len) {
    if (n_sites == 0 || n_sites > 16 ||
        state.size() != static_cast<Eigen::Index>(std::size_t(1) << n_sites))
        throw std::invalid_argument(
            "interval_entanglement_bits: state/width mismatch");
    if (len == 0 || len >= n_sites)
        throw std::invalid_argument(
            "interval_entanglement_bits: interval must be a proper subset");
    first %= n_sites;
    // a wrapped interval has the same entropy as its contiguous complement
    if (first + len > n_sites) {
        const std::size_t nfirst = (first + len) % n_sites;
        const std::size_t nlen = n_sites - len;
        first = nfirst;
        len = nlen;
    }
    const std::size_t rows = std::size_t(1) << len;
    const std::size_t cols = std::size_t(1) << (n_sites - len);
    const std::size_t suffix = n_sites - first - len;
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(rows),
                       static_cast<Eigen::Index>(cols));
    for (std::size_t idx = 0; idx < rows * cols; ++idx) {
        const std::size_t mid = (idx >> suffix) & (rows - 1);
        const std::size_t hi = idx >> (suffix + len);
        const std::size_t lo = idx & ((std::size_t(1) << suffix) - 1);
        a(static_cast<Eigen::Index>(mid),
          static_cast<Eigen::Index>((hi << suffix) | lo)) =
            state[static_cast<Eigen::Index>(idx)];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    double h = 0.0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double p = svd.singularValues()[k] * svd.singularValues()[k];
        if (p > 1e-300) h -= p * std::log2(p);
    }
    return h;
}

namespace {

// Unit-capacity max flow over the tensor graph (Edmonds-Karp). Arc pairs
// with capacity 1 on both directions model the undirected legs.
class FlowGraph {
  public:
    explicit FlowGraph(std::size_t n_nodes) : head_(n_nodes) {}

    void add_undirected(std::size_t u, std::size_t v, long long cap) {
        add_arc(u, v, cap);
        add_arc(v, u, cap);
    }

    void add_directed(std::size_t u, std::size_t v, long long cap) {
        add_arc(u, v, cap);
        add_arc(v, u, 0);
    }

    long long max_flow(std::size_t s, std::size_t t) {
        long long total = 0;
        while (true) {
            std::vector<int> prev_arc(head_.size(), -1);
            std::vector<char> seen(head_.size(), 0);
            std::queue<std::size_t> q;
            q.push(s);
            seen[s] = 1;
            while (!q.empty() && !seen[t]) {
                const std::size_t u = q.front();
                q.pop();
                for (int a : head_[u]) {
                    const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                    if (arc.cap > 0 && !seen[arc.to]) {
                        seen[arc.to] = 1;
                        prev_arc[arc.to] = a;
                        q.push(arc.to);
                    }
                }
            }
            if (!seen[t]) return total;
            long long push = -1;
            for (std::size_t v = t; v != s;) {
                const Arc& arc = arcs_[static_cast<std::size_t>(prev_arc[v])];
                push = push < 0 ? arc.cap : std::min(push, arc.cap);
                v = arcs_[static_cast<std::size_t>(prev_arc[v] ^ 1)].to;
            }
            for (std::size_t v = t; v != s;) {
                const int a = prev_arc[v];
                arcs_[static_cast<std::size_t>(a)].cap -= push;
                arcs_[static_cast<std::size_t>(a ^ 1)].cap += push;
                v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            total += push;
        }
    }

  private:
    struct Arc {
        std::size_t to;
        long long cap;
    };

    void add_arc(std::size_t u, std::size_t v, long long cap) {
        head_[u].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({v, cap});
    }

    std::vector<std::vector<int>> head_;
    std::vector<Arc> arcs_;
};

}  // namespace

double minimal_cut_entropy(const MeraNetwork& net, std::size_t first,
                           std::size_t len) {
    check_shape(net);
    const std::size_t n = net.n_bottom;
    if (len == 0 || len >= n)
        throw std::invalid_argument(
            "minimal_cut_entropy: interval must be a proper subset");

    // node ids: 0 top tensor; per layer, isometries then entanglers; then
    // one node per boundary site; finally source and sink
    std::size_t next_id = 1;
    std::vector<std::size_t> iso_base, ent_base;
    for (const auto& layer : net.layers) {
        iso_base.push_back(next_id);
        next_id += layer.isometries.size();
        ent_base.push_back(next_id);
        next_id += layer.entanglers.size();
    }
    const std::size_t site_base = next_id;
    next_id += n;
    const std::size_t src = next_id++;
    const std::size_t sink = next_id++;
    FlowGraph g(next_id);

    std::vector<std::size_t> out;  // producer node of each current-row leg
    out.assign(net.n_top, 0);      // the top tensor feeds the first row
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const std::size_t w = net.layers[l].isometries.size();
        for (std::size_t i = 0; i < w; ++i)
            g.add_undirected(out[i], iso_base[l] + i, 1);
        std::vector<std::size_t> next_out(2 * w);
        for (std::size_t x = 0; x < 2 * w; ++x) {
            // leg x of the embedded row feeds entangler p: legs 2p+1 and
            // 2p+2 (mod 2w) belong to pair p
            const std::size_t p =
                (x % 2 == 1) ? (x - 1) / 2 : (x / 2 + w - 1) % w;
            g.add_undirected(iso_base[l] + x / 2, ent_base[l] + p, 1);
            next_out[x] = ent_base[l] + p;
        }
        out = std::move(next_out);
    }
    for (std::size_t s = 0; s < n; ++s)
        g.add_undirected(out[s], site_base + s, 1);

    std::vector<char> in_interval(n, 0);
    for (std::size_t k = 0; k < len; ++k) in_interval[(first + k) % n] = 1;
    for (std::size_t s = 0; s < n; ++s) {
        if (in_interval[s])
            g.add_directed(src, site_base + s, 1u << 20);
        else
            g.add_directed(site_base + s, sink, 1u << 20);
    }
    return double(g.max_flow(src, sink));
}

}  // namespace pathlab
