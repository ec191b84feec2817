#include "stabcanon/linear.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "stabcanon/reversal.hpp"

namespace stabcanon {

LinearMatrix::LinearMatrix(int n_qubits) : n(n_qubits), rows(n_qubits) {
    if (n < 0 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in 0..64");
    for (int i = 0; i < n; ++i) rows[i] = bit(i);
}

LinearMatrix::LinearMatrix(int n_qubits, std::vector<Mask> r) : n(n_qubits), rows(std::move(r)) {
    if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("row count must equal n");
    for (Mask m : rows)
        if (m & ~low_mask(n)) throw std::invalid_argument("row has bits outside 0..n-1");
}

LinearMatrix LinearMatrix::reversal(int n) {
    LinearMatrix m(n);
    for (int i = 0; i < n; ++i) m.rows[i] = bit(n - 1 - i);
    return m;
}

LinearMatrix LinearMatrix::of_circuit(const Circuit& c) {
    LinearMatrix m(c.n);
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::H) throw std::invalid_argument("linear part undefined for H gates");
        if (g.kind == GateKind::CNOT) m.apply_cnot(g.a, g.b);
    }
    return m;
}

bool LinearMatrix::is_identity() const { return *this == LinearMatrix(n); }

namespace {

// Reduces rows to the identity with row operations rows[t] ^= rows[c]; returns
// the (c, t) list, or nothing if singular.
bool gauss_reduce(std::vector<Mask> rows, int n, std::vector<std::pair<int, int>>& ops) {
    for (int col = 0; col < n; ++col) {
        if (!((rows[col] >> col) & 1)) {
            int r = col + 1;
            while (r < n && !((rows[r] >> col) & 1)) ++r;
            if (r == n) return false;
            rows[col] ^= rows[r];
            ops.emplace_back(r, col);
        }
        for (int r = col + 1; r < n; ++r) {
            if ((rows[r] >> col) & 1) {
                rows[r] ^= rows[col];
                ops.emplace_back(col, r);
            }
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        for (int r = 0; r < col; ++r) {
            if ((rows[r] >> col) & 1) {
                rows[r] ^= rows[col];
                ops.emplace_back(col, r);
            }
        }
    }
    return true;
}

}  // namespace

bool LinearMatrix::is_invertible() const {
    std::vector<std::pair<int, int>> ops;
    return gauss_reduce(rows, n, ops);
}

LinearMatrix LinearMatrix::inverse() const {
    std::vector<std::pair<int, int>> ops;
    if (!gauss_reduce(rows, n, ops)) throw std::domain_error("matrix is singular");
    // The same row operations applied to the identity give the inverse.
    LinearMatrix inv(n);
    for (auto [c, t] : ops) inv.apply_cnot(c, t);
    return inv;
}

LinearMatrix LinearMatrix::transpose() const {
    LinearMatrix t(n, std::vector<Mask>(n, 0));
    for (int i = 0; i < n; ++i)
        for_each_bit(rows[i], [&](int j) { t.rows[j] |= bit(i); });
    return t;
}

Mask LinearMatrix::pull_back(Mask m) const {
    Mask out = 0;
    for_each_bit(m, [&](int i) { out ^= rows[i]; });
    return out;
}

std::string LinearMatrix::str() const {
    std::string out = std::to_string(n) + "\n";
    for (Mask r : rows) {
        for (int j = 0; j < n; ++j) out += ((r >> j) & 1) ? '1' : '0';
        out += '\n';
    }
    return out;
}

LinearMatrix LinearMatrix::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    int n = -1;
    if (!(in >> n) || n < 0 || n > kMaxQubits) throw std::invalid_argument("matrix: bad dimension line");
    std::vector<Mask> rows;
    for (int i = 0; i < n; ++i) {
        std::string r;
        if (!(in >> r) || static_cast<int>(r.size()) != n)
            throw std::invalid_argument("matrix: row " + std::to_string(i + 1) + " must have n characters");
        Mask m = 0;
        for (int j = 0; j < n; ++j) {
            if (r[j] == '1') m |= bit(j);
            else if (r[j] != '0') throw std::invalid_argument("matrix: rows are over {0,1}");
        }
        rows.push_back(m);
    }
    return LinearMatrix(n, std::move(rows));
}

LinearMatrix compose(const LinearMatrix& a, const LinearMatrix& b) {
    if (a.n != b.n) throw std::invalid_argument("compose: dimension mismatch");
    LinearMatrix out(a.n, std::vector<Mask>(a.n, 0));
    for (int i = 0; i < a.n; ++i) out.rows[i] = a.pull_back(b.rows[i]);
    return out;
}

Circuit synth_cnot_gauss(const LinearMatrix& g) {
    std::vector<std::pair<int, int>> ops;
    if (!gauss_reduce(g.rows, g.n, ops)) throw std::domain_error("matrix is singular");
    // ops carry g to the identity, so they compute g^{-1}; reversed they compute g.
    Circuit c(g.n);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) c.gates.push_back(Gate::cnot(it->first, it->second));
    return c;
}

namespace {

// Smallest bit length reachable by v + u over u in the span of `basis`.
int reduced_key(Mask v, const Mask* basis, int count) {
    Mask piv[64] = {};
    for (int k = 0; k < count; ++k) {
        Mask u = basis[k];
        while (u) {
            int t = bit_length(u) - 1;
            if (piv[t]) {
                u ^= piv[t];
            } else {
                piv[t] = u;
                break;
            }
        }
    }
    while (v) {
        int t = bit_length(v) - 1;
        if (!piv[t]) return t + 1;
        v ^= piv[t];
    }
    return 0;
}

struct LnnState {
    int n;
    std::vector<Mask> rows;
    std::vector<std::pair<int, int>> ops;

    void cnot(int c, int t) {
        rows[t] ^= rows[c];
        ops.emplace_back(c, t);
    }
};

// Odd-even rounds on boxes (i, i+1) until row i has bit length n - i for all i,
// i.e. the rows form a northwest triangle.
bool lnn_triangulate(LnnState& s) {
    const int n = s.n;
    auto done = [&] {
        for (int i = 0; i < n; ++i)
            if (bit_length(s.rows[i]) != n - i) return false;
        return true;
    };
    if (done()) return true;
    for (int r = 0; r < n + 2; ++r) {
        for (int i = r % 2; i + 1 < n; i += 2) {
            const Mask* rest = s.rows.data() + i + 2;
            int cnt = n - i - 2;
            Mask a = s.rows[i], b = s.rows[i + 1];
            int ka = reduced_key(a, rest, cnt), kb = reduced_key(b, rest, cnt);
            int kab = reduced_key(a ^ b, rest, cnt);
            if (kab < kb && kab <= ka) {
                s.cnot(i, i + 1);
            } else if (ka < kb) {
                s.cnot(i + 1, i);
                s.cnot(i, i + 1);
            }
        }
        if (done()) return true;
    }
    return false;
}

// Odd-even transposition sort of a northwest triangle into the identity.
bool lnn_sort(LnnState& s) {
    const int n = s.n;
    auto done = [&] {
        for (int i = 0; i < n; ++i)
            if (s.rows[i] != bit(i)) return false;
        return true;
    };
    for (int r = 0; r < n + 1; ++r) {
        if (done()) return true;
        for (int i = r % 2; i + 1 < n; i += 2) {
            Mask a = s.rows[i], b = s.rows[i + 1];
            int ka = bit_length(a), kb = bit_length(b);
            if (ka <= kb) continue;
            s.cnot(i, i + 1);
            s.cnot(i + 1, i);
            // When a already contains b's leading bit, two CNOTs both swap the
            // leading bits and cancel it from the lower row.
            if (!((a >> (kb - 1)) & 1)) s.cnot(i, i + 1);
        }
    }
    return done();
}

}  // namespace

Circuit synth_cnot_lnn(const LinearMatrix& g) {
    const int n = g.n;
    if (g.is_identity()) return Circuit(n);
    if (n >= 2 && g == LinearMatrix::reversal(n)) return reversal_network(n).circuit();
    LnnState s{n, g.rows, {}};
    if (!g.is_invertible()) throw std::domain_error("matrix is singular");
    if (!lnn_triangulate(s) || !lnn_sort(s)) throw std::logic_error("synth_cnot_lnn: elimination did not converge");
    Circuit c(n);
    for (auto it = s.ops.rbegin(); it != s.ops.rend(); ++it) {
        Gate gt = Gate::cnot(it->first, it->second);
        // Adjacent equal CNOTs cancel.
        if (!c.gates.empty() && c.gates.back() == gt) c.gates.pop_back();
        else c.gates.push_back(gt);
    }
    return c;
}

Circuit synth_cnot(const LinearMatrix& g, LinearBackend backend) {
    return backend == LinearBackend::LNN ? synth_cnot_lnn(g) : synth_cnot_gauss(g);
}

}  // namespace stabcanon
