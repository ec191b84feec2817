#include "stabcanon/tableau.hpp"

#include <random>
#include <stdexcept>

namespace stabcanon {

PauliTerm& PauliTerm::operator*=(const PauliTerm& rhs) {
    phase = static_cast<std::uint8_t>((phase + rhs.phase + 2 * popcount(z & rhs.x)) & 3);
    x ^= rhs.x;
    z ^= rhs.z;
    return *this;
}

PauliTerm operator*(PauliTerm a, const PauliTerm& b) { return a *= b; }

std::string PauliTerm::letters(int n) const {
    std::string s;
    s.reserve(n);
    for (int q = 0; q < n; ++q) {
        bool xb = (x >> q) & 1, zb = (z >> q) & 1;
        s.push_back(xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
    }
    return s;
}

bool SymplecticMatrix::is_symplectic() const {
    // Rows i and j must pair to 1 exactly when they are conjugate generators.
    auto form = [this](int i, int j) { return parity((x[i] & z[j]) ^ (z[i] & x[j])); };
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i + 1; j < 2 * n; ++j)
            if (form(i, j) != (j == i + n)) return false;
    return true;
}

Tableau::Tableau(int n) : n_(n), xs_(n), zs_(n) {
    if (n < 0 || n > kMaxQubits) throw std::invalid_argument("qubit count must be in 0..64");
    for (int q = 0; q < n; ++q) {
        xs_[q].x = bit(q);
        zs_[q].z = bit(q);
    }
}

namespace {

void conj_gate(PauliTerm& p, const Gate& g) {
    const Mask a = bit(g.a);
    switch (g.kind) {
        case GateKind::H: {
            bool xb = p.x & a, zb = p.z & a;
            if (xb && zb) p.phase = (p.phase + 2) & 3;
            if (xb != zb) {
                p.x ^= a;
                p.z ^= a;
            }
            break;
        }
        case GateKind::P:
            for (int k = 0; k < g.power; ++k) {
                if (p.x & a) {
                    p.phase = (p.phase + 1) & 3;
                    p.z ^= a;
                }
            }
            break;
        case GateKind::CNOT: {
            const Mask t = bit(g.b);
            if (p.x & a) p.x ^= t;
            if (p.z & t) p.z ^= a;
            break;
        }
        case GateKind::CZ: {
            const Mask b = bit(g.b);
            bool xa = p.x & a, xb = p.x & b;
            if (xa && xb) p.phase = (p.phase + 2) & 3;
            if (xb) p.z ^= a;
            if (xa) p.z ^= b;
            break;
        }
    }
}

}  // namespace

void Tableau::apply(const Gate& g) {
    check_gate(g, n_);
    for (auto& p : xs_) conj_gate(p, g);
    for (auto& p : zs_) conj_gate(p, g);
}

void Tableau::apply(const Circuit& c) {
    if (c.n != n_) throw std::invalid_argument("qubit count mismatch");
    for (const Gate& g : c.gates) apply(g);
}

void Tableau::prepend_h(int q) { std::swap(xs_[q], zs_[q]); }

void Tableau::prepend_p(int q) {
    // P X P^dagger = i X Z.
    PauliTerm t = xs_[q] * zs_[q];
    t.phase = (t.phase + 1) & 3;
    xs_[q] = t;
}

void Tableau::prepend_cnot(int control, int target) {
    xs_[control] *= xs_[target];
    zs_[target] = zs_[control] * zs_[target];
}

PauliTerm Tableau::conjugate(const PauliTerm& p) const {
    // Expand p in generators; X_q Z_q ordering per qubit matches the product order.
    PauliTerm out;
    out.phase = p.phase;
    for (int q = 0; q < n_; ++q) {
        if (p.x & bit(q)) out *= xs_[q];
    }
    // Reordering X^x Z^z from per-qubit interleaved to all-X-then-all-Z is sign-free,
    // since X_q and Z_r commute for q != r.
    for (int q = 0; q < n_; ++q) {
        if (p.z & bit(q)) out *= zs_[q];
    }
    return out;
}

SymplecticMatrix Tableau::symplectic() const {
    SymplecticMatrix m{n_, std::vector<Mask>(2 * n_), std::vector<Mask>(2 * n_)};
    for (int q = 0; q < n_; ++q) {
        m.x[q] = xs_[q].x, m.z[q] = xs_[q].z;
        m.x[n_ + q] = zs_[q].x, m.z[n_ + q] = zs_[q].z;
    }
    return m;
}

bool Tableau::is_identity() const { return *this == Tableau(n_); }

std::string Tableau::dump() const {
    std::string out;
    auto line = [&](const PauliTerm& p) {
        out += p.negative() ? '-' : '+';
        out += p.letters(n_);
        out += '\n';
    };
    for (const auto& p : xs_) line(p);
    for (const auto& p : zs_) line(p);
    return out;
}

Tableau apply_gate(Tableau t, const Gate& g) {
    t.apply(g);
    return t;
}

Tableau circuit_to_tableau(const Circuit& c) {
    Tableau t(c.n);
    t.apply(c);
    return t;
}

bool tableau_equal(const Tableau& a, const Tableau& b) {
    if (a.n() != b.n()) throw std::invalid_argument("tableau_equal: qubit count mismatch");
    return a == b;
}

Circuit random_clifford_circuit(int n, std::uint64_t seed, int length) {
    if (n < 1) throw std::invalid_argument("random_clifford: n must be positive");
    if (length < 0) length = 10 * n * n;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> qubit(0, n - 1);
    // Kind 4 is a no-op so that words of every parity are sampled.
    std::uniform_int_distribution<int> kind(0, 4);
    Circuit c(n);
    for (int i = 0; i < length; ++i) {
        int k = kind(rng);
        if (k == 4 || (n == 1 && k >= 2)) continue;
        int a = qubit(rng);
        if (k < 2) {
            c.add(k == 0 ? Gate::h(a) : Gate::p(a));
            continue;
        }
        int b = qubit(rng);
        while (b == a) b = qubit(rng);
        c.add(k == 2 ? Gate::cnot(a, b) : Gate::cz(a, b));
    }
    return c;
}

Tableau random_clifford(int n, std::uint64_t seed) { return circuit_to_tableau(random_clifford_circuit(n, seed)); }

boost::multiprecision::cpp_int symplectic_order(int n) {
    if (n < 1) throw std::invalid_argument("symplectic_order: n must be positive");
    boost::multiprecision::cpp_int r = 1;
    r <<= n * n;
    for (int j = 1; j <= n; ++j) {
        boost::multiprecision::cpp_int f = 1;
        f <<= 2 * j;
        r *= f - 1;
    }
    return r;
}

}  // namespace stabcanon
