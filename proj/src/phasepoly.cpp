#include "stabcanon/phasepoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabcanon {

CZLayer::CZLayer(int n_qubits, std::vector<std::pair<int, int>> e) : n(n_qubits) {
    for (auto [a, b] : e) toggle(a, b);
}

void CZLayer::toggle(int a, int b) {
    if (a == b || a < 0 || b < 0 || a >= n || b >= n) throw std::invalid_argument("bad CZ edge");
    std::pair<int, int> e = std::minmax(a, b);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it != edges.end() && *it == e) edges.erase(it);
    else edges.insert(it, e);
}

void PhasePolynomial::add(Mask m, int coeff) {
    if (m == 0) return;
    if (m & ~low_mask(n)) throw std::invalid_argument("mask has bits outside 0..n-1");
    int c = ((coeff % 4) + 4) % 4;
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(m, static_cast<std::uint8_t>(c));
    if (fresh) return;
    it->second = static_cast<std::uint8_t>((it->second + c) & 3);
    if (it->second == 0) terms.erase(it);
}

int PhasePolynomial::coeff(Mask m) const {
    auto it = terms.find(m);
    return it == terms.end() ? 0 : it->second;
}

int PhasePolynomial::max_weight() const {
    int w = 0;
    for (const auto& [m, c] : terms) w = std::max(w, popcount(m));
    return w;
}

std::string PhasePolynomial::str() const {
    std::string out;
    for (const auto& [m, c] : terms) {
        out += std::to_string(c) + ' ';
        for (int j = 0; j < n; ++j) out += ((m >> j) & 1) ? '1' : '0';
        out += '\n';
    }
    return out;
}

int evaluate(const PhasePolynomial& p, Mask assignment) {
    int s = 0;
    for (const auto& [m, c] : p.terms)
        if (parity(m & assignment)) s += c;
    return s & 3;
}

Extraction extract(const Circuit& c) {
    Extraction e{PhasePolynomial(c.n), LinearMatrix(c.n)};
    auto& w = e.g.rows;
    for (const Gate& g : c.gates) {
        switch (g.kind) {
            case GateKind::H:
                throw std::invalid_argument("extract: circuit contains H");
            case GateKind::P:
                e.p.add(w[g.a], g.power);
                break;
            case GateKind::CNOT:
                w[g.b] ^= w[g.a];
                break;
            case GateKind::CZ:
                e.p.add(w[g.a], 1);
                e.p.add(w[g.b], 1);
                e.p.add(w[g.a] ^ w[g.b], 3);
                break;
        }
    }
    return e;
}

PhasePolynomial fold(const PhasePolynomial& p) {
    PhasePolynomial out = p;
    for (int s = p.max_weight(); s >= 3; --s) {
        std::vector<std::pair<Mask, int>> heavy;
        for (const auto& [m, c] : out.terms)
            if (popcount(m) == s) heavy.emplace_back(m, c);
        // Rewrites only create lighter masks, so this weight class is final.
        for (auto [m, u] : heavy) {
            out.terms.erase(m);
            Mask a = m & (~m + 1);
            Mask rest = m ^ a;
            Mask b = rest & (~rest + 1);
            Mask c = rest ^ b;
            int v = 3 * u;
            for (Mask t : {a, b, c, a | b, a | c, b | c}) out.add(t, v);
        }
    }
    return out;
}

PhasePolynomial change_basis(const PhasePolynomial& p, const LinearMatrix& old_in_new) {
    if (old_in_new.n != p.n) throw std::invalid_argument("change_basis: dimension mismatch");
    PhasePolynomial out(p.n);
    for (const auto& [m, c] : p.terms) out.add(old_in_new.pull_back(m), c);
    return out;
}

DiagonalForm split_diagonal(const PhasePolynomial& p) {
    DiagonalForm d{std::vector<int>(p.n, 0), CZLayer(p.n)};
    for (const auto& [m, c] : p.terms) {
        int w = popcount(m);
        if (w > 2) throw std::invalid_argument("split_diagonal: term of weight > 2");
        int j = lowest_bit(m);
        d.powers[j] = (d.powers[j] + c) & 3;
        if (w == 2) {
            // u(xj + xk) = u xj + u xk - 2u xj xk.
            int k = lowest_bit(m ^ bit(j));
            d.powers[k] = (d.powers[k] + c) & 3;
            if (c & 1) d.cz.toggle(j, k);
        }
    }
    return d;
}

PhasePolynomial diagonal_polynomial(const DiagonalForm& d) {
    PhasePolynomial p(static_cast<int>(d.powers.size()));
    for (int q = 0; q < p.n; ++q) p.add(bit(q), d.powers[q]);
    for (auto [a, b] : d.cz.edges) {
        p.add(bit(a), 1);
        p.add(bit(b), 1);
        p.add(bit(a) | bit(b), 3);
    }
    return p;
}

bool same_function(const PhasePolynomial& a, const PhasePolynomial& b) {
    if (a.n != b.n) return false;
    return split_diagonal(fold(a)) == split_diagonal(fold(b));
}

namespace {

void emit_powers(Circuit& c, const std::vector<int>& powers) {
    for (int q = 0; q < c.n; ++q)
        if (powers[q]) c.add(Gate::p(q, powers[q]));
}

void emit_cz(Circuit& c, const CZLayer& layer) {
    for (auto [a, b] : layer.edges) c.add(Gate::cz(a, b));
}

}  // namespace

Circuit synthesize_pczc(const PhasePolynomial& p, const LinearMatrix& g, LinearBackend backend) {
    if (p.n != g.n) throw std::invalid_argument("synthesize_pczc: dimension mismatch");
    DiagonalForm d = split_diagonal(p);
    Circuit c(p.n);
    emit_powers(c, d.powers);
    emit_cz(c, d.cz);
    c.append(synth_cnot(g, backend));
    return c;
}

Circuit reexpress(const PhasePolynomial& p, const LinearMatrix& g, StageOrder order, LinearBackend backend) {
    if (p.n != g.n) throw std::invalid_argument("reexpress: dimension mismatch");
    if (p.max_weight() > 2) throw std::invalid_argument("reexpress: term of weight > 2");
    bool linear_first = order == StageOrder::CPCZ || order == StageOrder::CCZP;
    // With the linear stage first, the phases are read off the output wires:
    // an input x equals g^{-1} applied to the outputs.
    DiagonalForm d = split_diagonal(linear_first ? fold(change_basis(p, g.inverse())) : p);
    Circuit c(p.n);
    switch (order) {
        case StageOrder::PCZC:
            emit_powers(c, d.powers);
            emit_cz(c, d.cz);
            c.append(synth_cnot(g, backend));
            break;
        case StageOrder::CZPC:
            emit_cz(c, d.cz);
            emit_powers(c, d.powers);
            c.append(synth_cnot(g, backend));
            break;
        case StageOrder::CPCZ:
            c.append(synth_cnot(g, backend));
            emit_powers(c, d.powers);
            emit_cz(c, d.cz);
            break;
        case StageOrder::CCZP:
            c.append(synth_cnot(g, backend));
            emit_cz(c, d.cz);
            emit_powers(c, d.powers);
            break;
    }
    return c;
}

}  // namespace stabcanon
