#include "stabcanon/czsynth.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <absl/container/flat_hash_map.h>

#include "stabcanon/reversal.hpp"
#include "stabcanon/tableau.hpp"

namespace stabcanon {

Circuit synth_cz_plain(const CZLayer& layer) {
    Circuit c(layer.n);
    for (auto [a, b] : layer.edges) c.add(Gate::cz(a, b));
    return c;
}

namespace {

// Search state: a linear map g on the wires together with the CZ graph of the
// accumulated phase, expressed over the current wire values. Single-qubit
// phases are free and are fixed up afterwards.
//   bits [0, n*n):  row i of g at offset i*n
//   bits [25, 35):  graph edges
using Key = std::uint64_t;
constexpr int kGraphShift = 25;

struct Move {
    GateKind kind;  // CZ or CNOT
    int a, b;       // CZ pair, or CNOT control/target
    bool flip;      // CNOT only: also toggle edge (target, control)
};

class CzSearch {
  public:
    explicit CzSearch(int n) : n_(n) {
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) edge_[a][b] = edge_[b][a] = edges_++;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) moves_.push_back({GateKind::CZ, a, b, false});
        for (int c = 0; c < n; ++c)
            for (int t = 0; t < n; ++t)
                if (c != t)
                    for (bool f : {false, true}) moves_.push_back({GateKind::CNOT, c, t, f});
        build_forward();
    }

    Key identity() const {
        Key k = 0;
        for (int i = 0; i < n_; ++i) k |= Key{1} << (i * n_ + i);
        return k;
    }

    Key target(const CZLayer& layer) const {
        Key k = identity();
        for (auto [a, b] : layer.edges) k ^= graph_bit(a, b);
        return k;
    }

    // Every move is an involution, which makes parent links implicit.
    Key apply(Key k, const Move& m) const {
        if (m.kind == GateKind::CZ) return k ^ graph_bit(m.a, m.b);
        const int c = m.a, t = m.b;
        const Key row_mask = (Key{1} << n_) - 1;
        Key row_c = (k >> (c * n_)) & row_mask;
        Key out = k ^ (row_c << (t * n_));
        // Re-expressing y_t = y_t' + y_c: every edge (a, t) with a != c
        // spawns an edge (a, c).
        for (int a = 0; a < n_; ++a) {
            if (a == t || a == c) continue;
            if (k & graph_bit(a, t)) out ^= graph_bit(a, c);
        }
        if (m.flip) out ^= graph_bit(t, c);
        return out;
    }

    // Shortest move sequence from the identity to the layer, if within 7.
    bool solve(const CZLayer& layer, std::vector<int>& path) const {
        const Key goal = target(layer);
        path.clear();
        if (auto it = fwd_.find(goal); it != fwd_.end()) {
            forward_path(goal, path);
            return true;
        }
        absl::flat_hash_map<Key, std::uint8_t> seen;
        seen.emplace(goal, kNone);
        std::vector<Key> level{goal};
        for (int db = 1; db <= kBackDepth; ++db) {
            std::vector<Key> next;
            Key best_meet = 0;
            int best_cost = 1 << 30;
            for (Key s : level) {
                for (std::size_t mi = 0; mi < moves_.size(); ++mi) {
                    Key u = apply(s, moves_[mi]);
                    if (!seen.emplace(u, static_cast<std::uint8_t>(mi)).second) continue;
                    next.push_back(u);
                    if (auto it = fwd_.find(u); it != fwd_.end()) {
                        int cost = depth_of(it->second) + db;
                        if (cost < best_cost) best_cost = cost, best_meet = u;
                    }
                }
            }
            if (best_cost < (1 << 30)) {
                forward_path(best_meet, path);
                for (Key s = best_meet; s != goal;) {
                    int mi = seen.at(s);
                    path.push_back(mi);
                    s = apply(s, moves_[mi]);
                }
                return true;
            }
            level = std::move(next);
        }
        return false;
    }

    const Move& move(int i) const { return moves_[i]; }

  private:
    static constexpr int kFwdDepth = 4;
    static constexpr int kBackDepth = 3;
    static constexpr std::uint8_t kNone = 0xff;
    // Forward entries pack depth (high 2 bits) and the last move.
    static int depth_of(std::uint8_t v) { return v == kNone ? 0 : (v >> 6) + 1; }

    Key graph_bit(int a, int b) const { return Key{1} << (kGraphShift + edge_[a][b]); }

    void build_forward() {
        const Key id = identity();
        fwd_.emplace(id, kNone);
        std::vector<Key> level{id};
        for (int d = 1; d <= kFwdDepth; ++d) {
            std::vector<Key> next;
            for (Key s : level) {
                for (std::size_t mi = 0; mi < moves_.size(); ++mi) {
                    Key u = apply(s, moves_[mi]);
                    auto packed = static_cast<std::uint8_t>(((d - 1) << 6) | mi);
                    if (fwd_.emplace(u, packed).second) next.push_back(u);
                }
            }
            level = std::move(next);
        }
    }

    void forward_path(Key s, std::vector<int>& path) const {
        std::vector<int> rev;
        for (std::uint8_t v; (v = fwd_.at(s)) != kNone;) {
            int mi = v & 63;
            rev.push_back(mi);
            s = apply(s, moves_[mi]);
        }
        path.assign(rev.rbegin(), rev.rend());
    }

    int n_;
    int edges_ = 0;
    std::array<std::array<int, 5>, 5> edge_{};
    std::vector<Move> moves_;
    absl::flat_hash_map<Key, std::uint8_t> fwd_;
};

const CzSearch& search_for(int n) {
    static std::once_flag once[6];
    static std::unique_ptr<CzSearch> tables[6];
    std::call_once(once[n], [n] { tables[n] = std::make_unique<CzSearch>(n); });
    return *tables[n];
}

// Turns a move sequence into gates, tracking the exact Z4 phase function over
// the current wires so that the P gates implied by flips can be placed.
Circuit realize(int n, const CzSearch& s, const std::vector<int>& path) {
    Circuit c(n);
    std::vector<int> lin(n, 0);
    std::array<std::array<bool, 5>, 5> adj{};
    for (int mi : path) {
        const Move& m = s.move(mi);
        if (m.kind == GateKind::CZ) {
            c.add(Gate::cz(m.a, m.b));
            adj[m.a][m.b] = adj[m.b][m.a] = !adj[m.a][m.b];
            continue;
        }
        const int ctl = m.a, tgt = m.b;
        if (((lin[tgt] & 1) != 0) != m.flip) {
            c.add(Gate::p(tgt));
            lin[tgt] = (lin[tgt] + 1) & 3;
        }
        c.add(Gate::cnot(ctl, tgt));
        // Old y_t = y_t' + y_c - 2 y_t' y_c.
        std::array<std::array<bool, 5>, 5> next = adj;
        for (int a = 0; a < n; ++a) {
            if (a == tgt || a == ctl || !adj[a][tgt]) continue;
            next[a][ctl] = next[ctl][a] = !next[a][ctl];
        }
        if (adj[ctl][tgt]) lin[ctl] = (lin[ctl] + 2) & 3;
        if (lin[tgt] & 1) next[tgt][ctl] = next[ctl][tgt] = !next[tgt][ctl];
        lin[ctl] = (lin[ctl] + lin[tgt]) & 3;
        adj = next;
    }
    for (int q = 0; q < n; ++q)
        if (lin[q]) c.add(Gate::p(q, 4 - lin[q]));
    return c;
}

// Two vertices a, b sharing at least three neighbours S: the 2|S| edges to S
// cost |S| + 2 gates by routing a + b through one wire.
Circuit greedy_double_star(const CZLayer& layer) {
    const int n = layer.n;
    std::vector<Mask> adj(n, 0);
    for (auto [a, b] : layer.edges) adj[a] |= bit(b), adj[b] |= bit(a);
    Circuit c(n);
    for (;;) {
        int best = 2, ba = -1, bb = -1;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                int common = popcount(adj[a] & adj[b]);
                if (common > best) best = common, ba = a, bb = b;
            }
        if (ba < 0) break;
        Mask shared = adj[ba] & adj[bb];
        c.add(Gate::cnot(ba, bb));
        for_each_bit(shared, [&](int s) { c.add(Gate::cz(bb, s)); });
        c.add(Gate::cnot(ba, bb));
        for_each_bit(shared, [&](int s) {
            adj[s] &= ~(bit(ba) | bit(bb));
            adj[ba] &= ~bit(s);
            adj[bb] &= ~bit(s);
        });
    }
    for (int a = 0; a < n; ++a)
        for_each_bit(adj[a] & ~low_mask(a + 1), [&](int b) { c.add(Gate::cz(a, b)); });
    return c;
}

}  // namespace

int cz_optimal_cost(const CZLayer& layer) {
    if (layer.n > 5) throw std::invalid_argument("cz_optimal_cost: n must be at most 5");
    if (layer.empty()) return 0;
    std::vector<int> path;
    if (!search_for(layer.n).solve(layer, path)) return -1;
    return static_cast<int>(path.size());
}

Circuit synth_cz_optimized(const CZLayer& layer) {
    const int n = layer.n;
    if (layer.empty()) return Circuit(n);
    Circuit plain = synth_cz_plain(layer);
    if (n <= 5) {
        const CzSearch& s = search_for(n);
        std::vector<int> path;
        if (s.solve(layer, path)) {
            Circuit c = realize(n, s, path);
            if (circuit_to_tableau(c) != circuit_to_tableau(plain))
                throw std::logic_error("synth_cz_optimized: search result does not match the layer");
            return c;
        }
        return plain;
    }
    Circuit c = greedy_double_star(layer);
    return c.two_qubit_count() <= plain.two_qubit_count() ? c : plain;
}

std::vector<IntervalLabel> interval_schedule(int n, int t) {
    if (n < 1) throw std::invalid_argument("interval_schedule: n must be positive");
    if (t < 0 || t > (n + 1) / 2) throw std::out_of_range("interval_schedule: t out of range");
    ReversalNetwork net = reversal_network(n);
    LinearMatrix w(n);
    for (std::size_t h = 0; h < std::min<std::size_t>(2 * t, net.halves.size()); ++h)
        for (const Gate& g : net.halves[h]) w.apply_cnot(g.a, g.b);
    std::vector<IntervalLabel> out;
    for (Mask m : w.rows) out.push_back({lowest_bit(m), bit_length(m) - 1});
    return out;
}

PhasePolynomial to_prefix_basis(const PhasePolynomial& p_over_x) {
    // x_j = y_{j-1} + y_j.
    const int n = p_over_x.n;
    LinearMatrix x_in_y(n);
    for (int j = 1; j < n; ++j) x_in_y.rows[j] |= bit(j - 1);
    return fold(change_basis(p_over_x, x_in_y));
}

Circuit czhat_omitted_first(int n) { return reversal_network(n).circuit(0, n >= 2 ? 2 : 0); }

Circuit czhat_omitted_last(int n) {
    ReversalNetwork net = reversal_network(n);
    std::size_t h = net.halves.size();
    return net.circuit(h >= 2 ? h - 2 : h);
}

Circuit synth_czhat_lnn(const PhasePolynomial& p_over_y, CzHatOptions opts) {
    const int n = p_over_y.n;
    if (p_over_y.max_weight() > 2) throw std::invalid_argument("synth_czhat_lnn: term of weight > 2");
    // Each prefix term names an interval of inputs.
    std::map<Mask, int> pending;
    for (const auto& [m, u] : p_over_y.terms) {
        int j = lowest_bit(m);
        Mask rest = m ^ bit(j);
        Mask interval = rest ? (low_mask(lowest_bit(rest) + 1) & ~low_mask(j + 1)) : low_mask(j + 1);
        pending[interval] = (pending[interval] + u) & 3;
    }

    ReversalNetwork net = reversal_network(n);
    std::size_t first = 0, last = net.halves.size();
    if (n >= 2 && opts.omit_first_s) first = 2;
    if (n >= 2 && opts.omit_last_s) last -= 2;
    if (first > last) throw std::invalid_argument("synth_czhat_lnn: too few qubits to omit both stages");

    LinearMatrix w(n);
    for (std::size_t h = 0; h < first; ++h)
        for (const Gate& g : net.halves[h]) w.apply_cnot(g.a, g.b);

    Circuit c(n);
    auto place = [&] {
        for (int q = 0; q < n; ++q) {
            auto it = pending.find(w.rows[q]);
            if (it == pending.end()) continue;
            c.add(Gate::p(q, it->second));
            pending.erase(it);
        }
    };
    place();
    for (std::size_t h = first; h < last; ++h) {
        for (const Gate& g : net.halves[h]) {
            c.add(g);
            w.apply_cnot(g.a, g.b);
        }
        place();
    }
    if (!pending.empty()) {
        // Single inputs are carried only at the two outer boundaries.
        if (opts.omit_first_s && opts.omit_last_s)
            throw std::invalid_argument("synth_czhat_lnn: single-input terms need one boundary stage kept");
        throw std::logic_error("synth_czhat_lnn: interval never carried by a wire");
    }
    return c;
}

}  // namespace stabcanon
