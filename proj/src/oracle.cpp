#include "stabcanon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <stdexcept>
#include <thread>

#include <absl/container/flat_hash_set.h>
#include <fmt/format.h>

#include "stabcanon/czsynth.hpp"
#include "stabcanon/tableau.hpp"

namespace stabcanon {

namespace {

using cd = std::complex<double>;

void apply_to_column(Eigen::Ref<Eigen::VectorXcd> v, const Gate& g) {
    const std::size_t dim = v.size();
    const std::size_t a = std::size_t{1} << g.a;
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            for (std::size_t i = 0; i < dim; ++i) {
                if (i & a) continue;
                cd x = v[i], y = v[i | a];
                v[i] = s * (x + y);
                v[i | a] = s * (x - y);
            }
            break;
        }
        case GateKind::P: {
            static const cd ph[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            for (std::size_t i = 0; i < dim; ++i)
                if (i & a) v[i] *= ph[g.power & 3];
            break;
        }
        case GateKind::CNOT: {
            const std::size_t t = std::size_t{1} << g.b;
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & a) && !(i & t)) std::swap(v[i], v[i | t]);
            break;
        }
        case GateKind::CZ: {
            const std::size_t b = std::size_t{1} << g.b;
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & a) && (i & b)) v[i] = -v[i];
            break;
        }
    }
}

}  // namespace

DenseUnitary dense_unitary(const Circuit& c) {
    if (c.n > kMaxDenseQubits) throw std::invalid_argument("dense_unitary: at most 10 qubits");
    const Eigen::Index dim = Eigen::Index{1} << c.n;
    DenseUnitary u = DenseUnitary::Identity(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col)
        for (const Gate& g : c.gates) apply_to_column(u.col(col), g);
    return u;
}

bool unitary_equal(const DenseUnitary& u, const DenseUnitary& v, PhaseMode mode) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) throw std::invalid_argument("unitary_equal: dimension mismatch");
    constexpr double tol = 1e-6;
    if (mode == PhaseMode::Exact) return (u - v).cwiseAbs().maxCoeff() < tol;
    // Align phases on the first entry of u with non-negligible magnitude.
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        cd a = u.data()[k], b = v.data()[k];
        if (std::abs(a) < 1e-3) continue;
        if (std::abs(b) < 1e-3) return false;
        cd rot = (a / std::abs(a)) / (b / std::abs(b));
        return (u - rot * v).cwiseAbs().maxCoeff() < tol;
    }
    return v.cwiseAbs().maxCoeff() < tol;
}

DenseUnitary phase_linear_unitary(const PhasePolynomial& p, const LinearMatrix& g) {
    if (p.n != g.n || p.n > kMaxDenseQubits) throw std::invalid_argument("phase_linear_unitary: bad size");
    static const cd ph[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Eigen::Index dim = Eigen::Index{1} << p.n;
    DenseUnitary u = DenseUnitary::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        Mask gx = 0;
        for (int i = 0; i < g.n; ++i)
            if (parity(g.rows[i] & static_cast<Mask>(x))) gx |= bit(i);
        u(static_cast<Eigen::Index>(gx), x) = ph[evaluate(p, static_cast<Mask>(x))];
    }
    return u;
}

// ---------------------------------------------------------------------------

std::uint64_t bfs_target_key(const CZLayer& layer) {
    std::uint64_t k = 0;
    for (auto [a, b] : layer.edges) {
        // Index of (a, b) in lexicographic order over pairs.
        int idx = a * (2 * layer.n - a - 1) / 2 + (b - a - 1);
        k |= std::uint64_t{1} << idx;
    }
    return k;
}

std::uint64_t bfs_target_key(const LinearMatrix& g) {
    std::uint64_t k = 0;
    for (int i = 0; i < g.n; ++i) k |= g.rows[i] << (i * g.n);
    return k;
}

namespace {

constexpr std::uint8_t kUnseen = 0xff;

// Level-synchronous BFS over a dense key space with unit-cost involutive
// moves. The frontier is split among threads; candidates are merged in thread
// order, so the result does not depend on the thread count.
template <class Neighbours>
std::vector<std::uint8_t> dense_bfs(std::size_t space, std::uint64_t start, Neighbours&& nb, int threads) {
    std::vector<std::uint8_t> dist(space, kUnseen);
    dist[start] = 0;
    std::vector<std::uint64_t> frontier{start};
    threads = std::max(1, threads);
    for (int d = 1; !frontier.empty(); ++d) {
        if (d >= kUnseen) throw std::logic_error("bfs: depth overflow");
        int t_count = static_cast<int>(std::min<std::size_t>(threads, (frontier.size() + 4095) / 4096));
        t_count = std::max(1, t_count);
        std::vector<std::vector<std::uint64_t>> found(t_count);
        auto work = [&](int t) {
            std::size_t lo = frontier.size() * t / t_count, hi = frontier.size() * (t + 1) / t_count;
            for (std::size_t i = lo; i < hi; ++i)
                nb(frontier[i], [&](std::uint64_t u) {
                    if (dist[u] == kUnseen) found[t].push_back(u);
                });
        };
        if (t_count == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < t_count; ++t) pool.emplace_back(work, t);
            for (auto& th : pool) th.join();
        }
        std::vector<std::uint64_t> next;
        for (auto& f : found)
            for (std::uint64_t u : f)
                if (dist[u] == kUnseen) {
                    dist[u] = static_cast<std::uint8_t>(d);
                    next.push_back(u);
                }
        frontier = std::move(next);
    }
    return dist;
}

void summarize(BfsResult& r) {
    r.histogram.clear();
    r.elements = 0;
    r.worst = 0;
    for (std::uint8_t c : r.cost) {
        if (c == kUnseen) continue;
        ++r.elements;
        r.worst = std::max<int>(r.worst, c);
        if (r.histogram.size() <= c) r.histogram.resize(c + 1, 0);
        ++r.histogram[c];
    }
}

BfsResult bfs_cz_only(int n, int threads) {
    if (n > 8) throw std::invalid_argument("bfs_optimal: CZ-only BFS limited to n <= 8");
    const int pairs = n * (n - 1) / 2;
    BfsResult r{"CZ-only/CZ-layers", n, 0, 0, {}, {}};
    r.cost = dense_bfs(
        std::size_t{1} << pairs, 0,
        [pairs](std::uint64_t s, auto&& emit) {
            for (int e = 0; e < pairs; ++e) emit(s ^ (std::uint64_t{1} << e));
        },
        threads);
    summarize(r);
    return r;
}

BfsResult bfs_cnot_only(int n, int threads) {
    if (n > 5) throw std::invalid_argument("bfs_optimal: CNOT-only BFS limited to n <= 5");
    BfsResult r{"CNOT-only/linear", n, 0, 0, {}, {}};
    const std::uint64_t row = (std::uint64_t{1} << n) - 1;
    r.cost = dense_bfs(
        std::size_t{1} << (n * n), bfs_target_key(LinearMatrix(n)),
        [n, row](std::uint64_t s, auto&& emit) {
            for (int c = 0; c < n; ++c) {
                std::uint64_t rc = (s >> (c * n)) & row;
                for (int t = 0; t < n; ++t)
                    if (t != c) emit(s ^ (rc << (t * n)));
            }
        },
        threads);
    summarize(r);
    return r;
}

// Elements of the group generated by P, CZ and CNOT: x -> i^{f(x)} |g x>.
// The key holds f(x) for x = 1 .. 2^n - 1 (two bits each; f(0) = 0),
// followed by the rows of g.
struct MixedSpace {
    int n;
    int fbits;

    explicit MixedSpace(int n_) : n(n_), fbits(2 * ((1 << n_) - 1)) {}

    std::uint64_t key(const std::vector<int>& f, std::uint64_t g) const {
        std::uint64_t k = 0;
        for (int x = 1; x < (1 << n); ++x) k |= std::uint64_t(f[x] & 3) << (2 * (x - 1));
        return k | (g << fbits);
    }
    void decode(std::uint64_t k, std::vector<int>& f, std::uint64_t& g) const {
        f.assign(1 << n, 0);
        for (int x = 1; x < (1 << n); ++x) f[x] = (k >> (2 * (x - 1))) & 3;
        g = k >> fbits;
    }
    // Value of output wire w on input x.
    int wire(std::uint64_t g, int w, int x) const { return parity(((g >> (w * n)) & ((1u << n) - 1)) & x); }
};

BfsResult bfs_mixed(int n, TargetGroup target) {
    if (n > 3) throw std::invalid_argument("bfs_optimal: mixed BFS limited to n <= 3");
    MixedSpace sp(n);
    const std::size_t space = std::size_t{1} << (sp.fbits + n * n);
    std::vector<std::uint8_t> dist(space, kUnseen);
    std::vector<int> f0(1 << n, 0);
    const std::uint64_t id = bfs_target_key(LinearMatrix(n));
    std::deque<std::uint64_t> dq;
    dist[sp.key(f0, id)] = 0;
    dq.push_back(sp.key(f0, id));
    std::vector<int> f, h;
    while (!dq.empty()) {
        std::uint64_t s = dq.front();
        dq.pop_front();
        const int d = dist[s];
        std::uint64_t g;
        sp.decode(s, f, g);
        auto relax = [&](std::uint64_t u, int w) {
            if (dist[u] != kUnseen && dist[u] <= d + w) return;
            dist[u] = static_cast<std::uint8_t>(d + w);
            if (w == 0) dq.push_front(u);
            else dq.push_back(u);
        };
        for (int q = 0; q < n; ++q) {
            h = f;
            for (int x = 1; x < (1 << n); ++x) h[x] = (h[x] + sp.wire(g, q, x)) & 3;
            relax(sp.key(h, g), 0);
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                h = f;
                for (int x = 1; x < (1 << n); ++x) h[x] = (h[x] + 2 * (sp.wire(g, a, x) & sp.wire(g, b, x))) & 3;
                relax(sp.key(h, g), 1);
            }
        for (int c = 0; c < n; ++c)
            for (int t = 0; t < n; ++t) {
                if (c == t) continue;
                std::uint64_t rc = (g >> (c * n)) & ((1u << n) - 1);
                relax(sp.key(f, g ^ (rc << (t * n))), 1);
            }
    }

    BfsResult r{target == TargetGroup::CZLayers ? "P+CZ+CNOT/CZ-layers" : "P+CZ+CNOT/linear", n, 0, 0, {}, {}};
    if (target == TargetGroup::Linear) {
        r.cost.assign(std::size_t{1} << (n * n), kUnseen);
        for (std::uint64_t g = 0; g < (std::uint64_t{1} << (n * n)); ++g) r.cost[g] = dist[sp.key(f0, g)];
    } else {
        const int pairs = n * (n - 1) / 2;
        r.cost.assign(std::size_t{1} << pairs, kUnseen);
        for (std::uint64_t e = 0; e < (std::uint64_t{1} << pairs); ++e) {
            std::vector<int> fe(1 << n, 0);
            int idx = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b, ++idx)
                    if ((e >> idx) & 1)
                        for (int x = 1; x < (1 << n); ++x) fe[x] = (fe[x] + 2 * (((x >> a) & 1) & ((x >> b) & 1))) & 3;
            r.cost[e] = dist[sp.key(fe, id)];
        }
    }
    summarize(r);
    return r;
}

}  // namespace

BfsResult bfs_optimal(int n, GateSet set, TargetGroup target, int threads) {
    if (n < 1) throw std::invalid_argument("bfs_optimal: n must be positive");
    switch (set) {
        case GateSet::CZOnly:
            if (target != TargetGroup::CZLayers) throw std::invalid_argument("bfs_optimal: CZ gates only reach CZ layers");
            return bfs_cz_only(n, threads);
        case GateSet::CNOTOnly:
            if (target != TargetGroup::Linear) throw std::invalid_argument("bfs_optimal: CNOT gates only reach linear maps");
            return bfs_cnot_only(n, threads);
        case GateSet::Mixed:
            return bfs_mixed(n, target);
    }
    throw std::invalid_argument("bfs_optimal: unknown gate set");
}

std::size_t symplectic_closure_size(int n) {
    if (n < 1 || n > 3) throw std::invalid_argument("symplectic_closure_size: n must be in 1..3");
    // Key: the 2n rows (x | z << n) packed 2n bits apiece.
    auto key = [n](const SymplecticMatrix& m) {
        std::uint64_t k = 0;
        for (int r = 0; r < 2 * n; ++r) k |= (m.x[r] | (m.z[r] << n)) << (2 * n * r);
        return k;
    };
    std::vector<Gate> gens;
    for (int q = 0; q < n; ++q) gens.push_back(Gate::h(q)), gens.push_back(Gate::p(q));
    for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t)
            if (c != t) gens.push_back(Gate::cnot(c, t));
    absl::flat_hash_set<std::uint64_t> seen;
    std::vector<Tableau> frontier{Tableau(n)};
    seen.insert(key(frontier[0].symplectic()));
    while (!frontier.empty()) {
        std::vector<Tableau> next;
        for (const Tableau& t : frontier)
            for (const Gate& g : gens) {
                Tableau u = apply_gate(t, g);
                if (seen.insert(key(u.symplectic())).second) next.push_back(std::move(u));
            }
        frontier = std::move(next);
    }
    return seen.size();
}

// ---------------------------------------------------------------------------

std::string Table1Cell::str() const {
    std::string s = kind == UpperBound ? "<=" + std::to_string(value) : std::to_string(value);
    if (kind == Implied) s += "*";
    if (!ok()) s += " (expected " + std::to_string(expected) + ")";
    return s;
}

std::vector<Table1Row> table1_report(int max_n, int threads) {
    static const int expected_cz[] = {0, 0, 1, 3, 6, 10};
    static const int expected_czmix[] = {0, 0, 1, 3, 5, 7};
    static const int expected_c[] = {0, 0, 3, 6, 9, 12};
    if (max_n < 2 || max_n > 5) throw std::invalid_argument("table1_report: max_n must be in 2..5");
    std::vector<Table1Row> rows;
    for (int n = 2; n <= max_n; ++n) {
        Table1Row r;
        r.n = n;
        r.cz_czonly = {bfs_optimal(n, GateSet::CZOnly, TargetGroup::CZLayers, threads).worst, Table1Cell::Exact,
                       expected_cz[n]};
        int cnot = bfs_optimal(n, GateSet::CNOTOnly, TargetGroup::Linear, threads).worst;
        r.c_cnotonly = {cnot, Table1Cell::Exact, expected_c[n]};
        if (n <= 3) {
            r.cz_mixed = {bfs_optimal(n, GateSet::Mixed, TargetGroup::CZLayers).worst, Table1Cell::Exact,
                          expected_czmix[n]};
            r.c_mixed = {bfs_optimal(n, GateSet::Mixed, TargetGroup::Linear).worst, Table1Cell::Exact, expected_c[n]};
        } else {
            // Per-layer search over every layer; reported as an upper bound.
            int worst = 0;
            const int pairs = n * (n - 1) / 2;
            for (std::uint64_t e = 0; e < (std::uint64_t{1} << pairs); ++e) {
                CZLayer layer(n);
                int idx = 0;
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b, ++idx)
                        if ((e >> idx) & 1) layer.toggle(a, b);
                worst = std::max<int>(worst, static_cast<int>(synth_cz_optimized(layer).two_qubit_count()));
            }
            r.cz_mixed = {worst, Table1Cell::UpperBound, expected_czmix[n]};
            // Mixed circuits for a linear map never beat CNOT-only ones.
            r.c_mixed = {cnot, Table1Cell::Implied, expected_c[n]};
        }
        rows.push_back(r);
    }
    return rows;
}

std::string table1_ascii(const std::vector<Table1Row>& rows) {
    std::string out = fmt::format("{:>3} | {:>10} {:>13} | {:>10} {:>13}\n", "n", "-CZ- {CZ}", "-CZ- {P,CZ,C}",
                                  "-C- {CNOT}", "-C- {P,CZ,C}");
    out += std::string(58, '-') + '\n';
    for (const auto& r : rows)
        out += fmt::format("{:>3} | {:>10} {:>13} | {:>10} {:>13}\n", r.n, r.cz_czonly.str(), r.cz_mixed.str(),
                           r.c_cnotonly.str(), r.c_mixed.str());
    out += "two-qubit gates cost 1, single-qubit gates cost 0; <= marks per-layer search upper bounds,\n"
           "* marks values implied by the CNOT-only optimum (mixed gates never help for -C-).\n";
    return out;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
    std::string out = "n,cz_czonly,cz_mixed,c_cnotonly,c_mixed\n";
    for (const auto& r : rows)
        out += fmt::format("{},{},{},{},{}\n", r.n, r.cz_czonly.value, r.cz_mixed.value, r.c_cnotonly.value,
                           r.c_mixed.value);
    return out;
}

}  // namespace stabcanon
