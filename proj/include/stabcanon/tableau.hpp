#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stabcanon/bits.hpp"
#include "stabcanon/circuit.hpp"

namespace stabcanon {

// i^phase * prod_q X_q^{x_q} Z_q^{z_q}, X before Z on each qubit.
struct PauliTerm {
    Mask x = 0;
    Mask z = 0;
    std::uint8_t phase = 0;

    bool operator==(const PauliTerm&) const = default;
    PauliTerm& operator*=(const PauliTerm& rhs);
    bool hermitian() const { return ((phase + popcount(x & z)) & 1) == 0; }
    // True when the term equals -1 times the letters printed by `letters`.
    bool negative() const { return ((phase - popcount(x & z)) & 3) == 2; }
    std::string letters(int n) const;
};

PauliTerm operator*(PauliTerm a, const PauliTerm& b);

// Binary part of a tableau: row j < n is the image of X_j, row n + j that of Z_j.
struct SymplecticMatrix {
    int n = 0;
    std::vector<Mask> x;
    std::vector<Mask> z;

    bool operator==(const SymplecticMatrix&) const = default;
    bool is_symplectic() const;
};

// Images of the Pauli generators under conjugation by a Clifford unitary U.
class Tableau {
  public:
    Tableau() = default;
    explicit Tableau(int n);
    static Tableau identity(int n) { return Tableau(n); }

    int n() const { return n_; }
    const PauliTerm& x_image(int q) const { return xs_[q]; }
    const PauliTerm& z_image(int q) const { return zs_[q]; }
    PauliTerm& x_image(int q) { return xs_[q]; }
    PauliTerm& z_image(int q) { return zs_[q]; }

    // Tableau of (g after U).
    void apply(const Gate& g);
    void apply(const Circuit& c);

    // Tableau of (U after g): the gate acts first in time.
    void prepend_h(int q);
    void prepend_p(int q);
    void prepend_cnot(int control, int target);

    // Image U P U^dagger of an arbitrary Pauli term.
    PauliTerm conjugate(const PauliTerm& p) const;

    SymplecticMatrix symplectic() const;
    bool is_identity() const;
    bool operator==(const Tableau&) const = default;

    // 2n lines: sign followed by n letters over IXYZ; X images first.
    std::string dump() const;

  private:
    int n_ = 0;
    std::vector<PauliTerm> xs_;
    std::vector<PauliTerm> zs_;
};

Tableau apply_gate(Tableau t, const Gate& g);
Tableau circuit_to_tableau(const Circuit& c);

// Throws std::invalid_argument on mismatched qubit counts.
bool tableau_equal(const Tableau& a, const Tableau& b);

// Random word over H, P, CNOT, CZ from up to 10 n^2 draws (some draws are
// skipped so both word parities occur); deterministic in seed.
Circuit random_clifford_circuit(int n, std::uint64_t seed, int length = -1);
Tableau random_clifford(int n, std::uint64_t seed);

// |Sp(2n, F2)| = 2^{n^2} prod_{j=1}^{n} (4^j - 1).
boost::multiprecision::cpp_int symplectic_order(int n);

}  // namespace stabcanon
