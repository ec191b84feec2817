#include "stabcanon/pipeline.hpp"

#include <stdexcept>

#include "stabcanon/czsynth.hpp"

namespace stabcanon {

Stage Stage::h(int, Mask q) {
    Stage s;
    s.kind = StageKind::H;
    s.hadamards = q;
    return s;
}

Stage Stage::p(int n) {
    Stage s;
    s.kind = StageKind::P;
    s.powers.assign(n, 0);
    return s;
}

Stage Stage::c(int n) {
    Stage s;
    s.kind = StageKind::C;
    s.linear = LinearMatrix(n);
    return s;
}

Stage Stage::czs(int n) {
    Stage s;
    s.kind = StageKind::CZ;
    s.cz = CZLayer(n);
    return s;
}

bool Stage::is_identity() const {
    switch (kind) {
        case StageKind::H:
            return hadamards == 0;
        case StageKind::P:
            for (int k : powers)
                if (k & 3) return false;
            return true;
        case StageKind::C:
            return linear.is_identity();
        case StageKind::CZ:
            return cz.empty();
    }
    return true;
}

Circuit Stage::circuit(int n, LinearBackend backend) const {
    Circuit c(n);
    switch (kind) {
        case StageKind::H:
            for_each_bit(hadamards, [&](int q) { c.add(Gate::h(q)); });
            break;
        case StageKind::P:
            for (int q = 0; q < n; ++q) c.add(Gate::p(q, powers[q] & 3));
            break;
        case StageKind::C:
            c = synth_cnot(linear, backend);
            break;
        case StageKind::CZ:
            for (auto [a, b] : cz.edges) c.add(Gate::cz(a, b));
            break;
    }
    return c;
}

std::string Stage::str() const {
    std::string out;
    switch (kind) {
        case StageKind::H:
            out = "H:";
            for_each_bit(hadamards, [&](int q) { out += ' ' + std::to_string(q); });
            break;
        case StageKind::P:
            out = "P:";
            for (std::size_t q = 0; q < powers.size(); ++q)
                if (powers[q] & 3) out += ' ' + std::to_string(q) + '^' + std::to_string(powers[q] & 3);
            break;
        case StageKind::C:
            out = "C:";
            if (!linear.is_identity())
                for (Mask r : linear.rows) {
                    out += ' ';
                    for (int j = 0; j < linear.n; ++j) out += ((r >> j) & 1) ? '1' : '0';
                }
            break;
        case StageKind::CZ:
            out = "CZ:";
            for (auto [a, b] : cz.edges) out += ' ' + std::to_string(a) + ',' + std::to_string(b);
            break;
    }
    return out;
}

Circuit StagedForm::circuit(LinearBackend backend) const {
    Circuit c(n);
    for (const Stage& s : stages) c.append(s.circuit(n, backend));
    return c;
}

namespace {

bool matches(const StagedForm& f, std::initializer_list<StageKind> kinds) {
    if (f.stages.size() != kinds.size()) return false;
    auto it = kinds.begin();
    for (const Stage& s : f.stages)
        if (s.kind != *it++) return false;
    return true;
}

using K = StageKind;

}  // namespace

bool StagedForm::is_eleven_stage() const {
    return matches(*this, {K::H, K::C, K::P, K::C, K::P, K::C, K::H, K::P, K::C, K::P, K::C});
}

bool StagedForm::is_eight_stage() const {
    return matches(*this, {K::H, K::C, K::CZ, K::P, K::H, K::P, K::CZ, K::C});
}

int StagedForm::non_identity_stages() const {
    int k = 0;
    for (const Stage& s : stages) k += !s.is_identity();
    return k;
}

std::string StagedForm::str() const {
    std::string out;
    for (const Stage& s : stages) out += s.str() + '\n';
    return out;
}

// ---------------------------------------------------------------------------
// Eleven-stage decomposition.
//
// Gates are prepended to the tableau until it becomes a Pauli operator. If
// g1, ..., gk are prepended then U = Q gk^-1 ... g1^-1, so the stages come
// out in time order and each prepended gate contributes its inverse.

namespace {

enum Slot { H1, C2, P3, C4, P5, C6, H7, P8, C9, P10, C11 };

struct Eliminator {
    Tableau w;
    StagedForm form;

    explicit Eliminator(const Tableau& t) : w(t) {
        const int n = t.n();
        form.n = n;
        for (Slot s : {H1, C2, P3, C4, P5, C6, H7, P8, C9, P10, C11}) {
            if (s == H1 || s == H7) form.stages.push_back(Stage::h(n));
            else if (s == P3 || s == P5 || s == P8 || s == P10) form.stages.push_back(Stage::p(n));
            else form.stages.push_back(Stage::c(n));
        }
    }

    int n() const { return w.n(); }

    void h(int q, Slot s) {
        w.prepend_h(q);
        form.stages[s].hadamards ^= bit(q);
    }
    void p(int q, Slot s) {
        w.prepend_p(q);
        auto& k = form.stages[s].powers[q];
        k = (k + 3) & 3;
    }
    void cnot(int c, int t, Slot s) {
        w.prepend_cnot(c, t);
        form.stages[s].linear.apply_cnot(c, t);
    }

    // Row q of the Z images, x part or z part.
    Mask z_row(int q, bool x_part) const { return x_part ? w.z_image(q).x : w.z_image(q).z; }
    Mask x_row(int q, bool x_part) const { return x_part ? w.x_image(q).x : w.x_image(q).z; }

    // Brings the chosen part of the Z images to the identity with CNOTs.
    void reduce_z(bool x_part, Slot s) {
        const int n = this->n();
        for (int col = 0; col < n; ++col) {
            if (!((z_row(col, x_part) >> col) & 1)) {
                int r = col + 1;
                while (r < n && !((z_row(r, x_part) >> col) & 1)) ++r;
                if (r == n) throw std::logic_error("decompose_11: singular block");
                cnot(r, col, s);
            }
            for (int r = 0; r < n; ++r)
                if (r != col && ((z_row(r, x_part) >> col) & 1)) cnot(col, r, s);
        }
    }

    // With the chosen part of the Z images equal to the identity, the same
    // part of the X images is a symmetric matrix M. Clears it as
    // P^Lambda, then C(L^T), P on all qubits, C(L^T)^-1, where L L^T agrees
    // with M off the diagonal.
    void clear_symmetric(bool x_part, Slot p1, Slot c1, Slot p2, Slot c2) {
        const int n = this->n();
        std::vector<Mask> m(n), l(n, 0);
        for (int i = 0; i < n; ++i) m[i] = x_row(i, x_part);
        bool trivial = true;
        for (int i = 0; i < n; ++i) {
            l[i] = bit(i);
            for (int j = 0; j < i; ++j) {
                bool v = (m[i] >> j) & 1;
                v ^= parity(l[i] & l[j] & low_mask(j));
                if (v) l[i] |= bit(j), trivial = false;
            }
        }
        if (trivial) {
            for (int q = 0; q < n; ++q)
                if ((m[q] >> q) & 1) p(q, p1);
        } else {
            for (int q = 0; q < n; ++q)
                if (((m[q] >> q) & 1) != parity(l[q])) p(q, p1);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if ((l[j] >> i) & 1) cnot(j, i, c1);
            for (int q = 0; q < n; ++q) p(q, p2);
            reduce_z(x_part, c2);
        }
        for (int q = 0; q < n; ++q)
            if (x_row(q, x_part) != 0) throw std::logic_error("decompose_11: symmetric block not cleared");
    }

    // The residual Pauli (time-last), as X and Z support.
    std::pair<Mask, Mask> residual() const {
        Mask xs = 0, zs = 0;
        for (int q = 0; q < n(); ++q) {
            const PauliTerm& xi = w.x_image(q);
            const PauliTerm& zi = w.z_image(q);
            if (xi.x != bit(q) || xi.z != 0 || zi.x != 0 || zi.z != bit(q))
                throw std::logic_error("decompose_11: elimination did not reach a Pauli");
            if (zi.negative()) xs |= bit(q);
            if (xi.negative()) zs |= bit(q);
        }
        return {xs, zs};
    }

    Circuit slots(std::initializer_list<Slot> ss) const {
        Circuit c(n());
        for (Slot s : ss) c.append(form.stages[s].circuit(n()));
        return c;
    }

    // Moves a Pauli from after the given stages to before them.
    PauliTerm pull_back(PauliTerm q, std::initializer_list<Slot> ss) const {
        return circuit_to_tableau(invert_circuit(slots(ss))).conjugate(q);
    }

    void add_z(Slot s, Mask zs) {
        for_each_bit(zs, [&](int q) {
            auto& k = form.stages[s].powers[q];
            k = (k + 2) & 3;
        });
    }
};

// Tableaus whose Z images become X-free after Hadamards on a subset T need
// only H1, C2 and the last four stages.
std::optional<StagedForm> decompose_sparse(const Tableau& t) {
    Eliminator e(t);
    const int n = t.n();
    for (int q = 0; q < n; ++q) {
        if (t.z_image(q).x == 0) continue;
        if (t.x_image(q).x != 0) return std::nullopt;
        e.h(q, H1);
    }
    e.reduce_z(false, C2);
    e.clear_symmetric(false, P8, C9, P10, C11);
    auto [xs, zs] = e.residual();
    PauliTerm q{xs, zs, 0};
    PauliTerm before = e.pull_back(q, {P8, C9, P10, C11});
    if (before.x != 0) return std::nullopt;
    e.add_z(P8, before.z);
    return e.form;
}

// Left kernel of the rows: vectors a with XOR of rows[i] over a_i equal to 0,
// returned in reduced echelon form keyed by lowest set bit.
std::vector<Mask> left_kernel(const std::vector<Mask>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<Mask> r = rows, comb(n);
    for (int i = 0; i < n; ++i) comb[i] = bit(i);
    int rank = 0;
    for (int col = 0; col < 64 && rank < n; ++col) {
        int piv = -1;
        for (int i = rank; i < n; ++i)
            if ((r[i] >> col) & 1) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(r[piv], r[rank]);
        std::swap(comb[piv], comb[rank]);
        for (int i = 0; i < n; ++i)
            if (i != rank && ((r[i] >> col) & 1)) r[i] ^= r[rank], comb[i] ^= comb[rank];
        ++rank;
    }
    std::vector<Mask> kernel(comb.begin() + rank, comb.end());
    // Reduced echelon form on the lowest set bit.
    for (std::size_t i = 0; i < kernel.size(); ++i) {
        std::size_t best = i;
        for (std::size_t j = i; j < kernel.size(); ++j)
            if (lowest_bit(kernel[j]) < lowest_bit(kernel[best])) best = j;
        std::swap(kernel[i], kernel[best]);
        Mask pb = bit(lowest_bit(kernel[i]));
        for (std::size_t j = 0; j < kernel.size(); ++j)
            if (j != i && (kernel[j] & pb)) kernel[j] ^= kernel[i];
    }
    return kernel;
}

StagedForm decompose_general(const Tableau& t) {
    Eliminator e(t);
    const int n = t.n();

    // Hadamards on the pivots of the left kernel of the Z images' X part make
    // that block invertible.
    std::vector<Mask> c(n);
    for (int q = 0; q < n; ++q) c[q] = t.z_image(q).x;
    for (Mask k : left_kernel(c)) e.h(lowest_bit(k), H1);

    e.reduce_z(true, C2);
    e.clear_symmetric(true, P3, C4, P5, C6);
    for (int q = 0; q < n; ++q) e.h(q, H7);
    e.clear_symmetric(false, P8, C9, P10, C11);

    auto [xs, zs] = e.residual();
    PauliTerm before = e.pull_back(PauliTerm{xs, zs, 0}, {P8, C9, P10, C11});
    e.add_z(P8, before.z);
    // X after a full Hadamard layer is Z before it.
    PauliTerm z_part = e.pull_back(PauliTerm{0, before.x, 0}, {C6});
    if (z_part.x != 0) throw std::logic_error("decompose_11: Pauli frame not diagonal");
    e.add_z(P5, z_part.z);
    return e.form;
}

}  // namespace

StagedForm decompose_11(const Tableau& t) {
    if (auto f = decompose_sparse(t)) return *f;
    return decompose_general(t);
}

// ---------------------------------------------------------------------------

namespace {

// Phase polynomial and linear map of a run of P and C stages.
Extraction extract_stages(const StagedForm& f, std::size_t first, std::size_t last) {
    Extraction e{PhasePolynomial(f.n), LinearMatrix(f.n)};
    for (std::size_t i = first; i < last; ++i) {
        const Stage& s = f.stages[i];
        if (s.kind == StageKind::C) {
            e.g = compose(e.g, s.linear);
        } else if (s.kind == StageKind::P) {
            for (int q = 0; q < f.n; ++q) e.p.add(e.g.rows[q], s.powers[q]);
        } else {
            throw std::invalid_argument("fold_to_8: unexpected stage in phase-linear segment");
        }
    }
    return e;
}

Stage p_stage(const std::vector<int>& powers) {
    Stage s = Stage::p(static_cast<int>(powers.size()));
    s.powers = powers;
    return s;
}

Stage cz_stage(const CZLayer& l) {
    Stage s = Stage::czs(l.n);
    s.cz = l;
    return s;
}

Stage c_stage(const LinearMatrix& g) {
    Stage s = Stage::c(g.n);
    s.linear = g;
    return s;
}

}  // namespace

StagedForm fold_to_8(const StagedForm& f) {
    if (!f.is_eleven_stage()) throw std::invalid_argument("fold_to_8: not an eleven-stage form");
    const int n = f.n;

    // C2 P3 C4 P5 C6 is (-P-C-)^3 with an empty leading P; written as -C-CZ-P-
    // the diagonal is read off the output wires.
    Extraction first = extract_stages(f, 1, 6);
    PhasePolynomial folded = fold(first.p);
    DiagonalForm d1 = split_diagonal(fold(change_basis(folded, first.g.inverse())));

    // P8 C9 P10 C11 as -P-CZ-C-.
    Extraction second = extract_stages(f, 7, 11);
    DiagonalForm d2 = split_diagonal(fold(second.p));

    StagedForm out{n, {}};
    out.stages.push_back(f.stages[0]);
    out.stages.push_back(c_stage(first.g));
    out.stages.push_back(cz_stage(d1.cz));
    out.stages.push_back(p_stage(d1.powers));
    out.stages.push_back(f.stages[6]);
    out.stages.push_back(p_stage(d2.powers));
    out.stages.push_back(cz_stage(d2.cz));
    out.stages.push_back(c_stage(second.g));
    return out;
}

namespace {

Mask reverse_bits(Mask m, int n) {
    Mask out = 0;
    for_each_bit(m, [&](int q) { out |= bit(n - 1 - q); });
    return out;
}

}  // namespace

Circuit compile_lnn(const StagedForm& f) {
    if (!f.is_eight_stage()) throw std::invalid_argument("compile_lnn: not an eight-stage form");
    const int n = f.n;
    const Stage& h1 = f.stages[0];
    const LinearMatrix& g1 = f.stages[1].linear;
    const Stage& h2 = f.stages[4];
    const LinearMatrix& g2 = f.stages[7].linear;

    auto diagonal = [&](const Stage& cz, const Stage& p) {
        return diagonal_polynomial(DiagonalForm{p.powers, cz.cz});
    };
    PhasePolynomial d1 = diagonal(f.stages[2], f.stages[3]);
    PhasePolynomial d2 = diagonal(f.stages[6], f.stages[5]);

    Circuit out(n);
    out.append(h1.circuit(n));

    if (d1.empty() && d2.empty()) {
        if (h2.is_identity()) {
            out.append(synth_cnot_lnn(compose(g1, g2)));
        } else {
            out.append(synth_cnot_lnn(g1));
            out.append(h2.circuit(n));
            out.append(synth_cnot_lnn(g2));
        }
        return out;
    }

    // Both diagonal stages become reversal blocks; the two reversals cancel.
    // The first block drops its leading stage S into C1, the second its
    // trailing stage S into C2.
    LinearMatrix s_first = LinearMatrix::of_circuit(czhat_omitted_first(n));
    LinearMatrix s_last = LinearMatrix::of_circuit(czhat_omitted_last(n));
    out.append(synth_cnot_lnn(compose(g1, s_first)));
    out.append(synth_czhat_lnn(to_prefix_basis(d1), {.omit_first_s = true}));

    // Between the blocks wire q holds what wire n-1-q holds in the form.
    Stage h2r = Stage::h(n, reverse_bits(h2.hadamards, n));
    out.append(h2r.circuit(n));
    PhasePolynomial d2r(n);
    for (const auto& [m, c] : d2.terms) d2r.add(reverse_bits(m, n), c);
    out.append(synth_czhat_lnn(to_prefix_basis(d2r), {.omit_last_s = true}));

    out.append(synth_cnot_lnn(compose(s_last, g2)));
    return out;
}

Canonical canonicalize(const Circuit& c) {
    StagedForm form = fold_to_8(decompose_11(circuit_to_tableau(c)));
    Circuit lnn = compile_lnn(form);
    return {std::move(form), std::move(lnn)};
}

}  // namespace stabcanon
