#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stabcanon/bits.hpp"
#include "stabcanon/circuit.hpp"

namespace stabcanon {

// Linear reversible map over F2. Row i is the mask of the input variables
// whose parity ends up on wire i.
struct LinearMatrix {
    int n = 0;
    std::vector<Mask> rows;

    LinearMatrix() = default;
    explicit LinearMatrix(int n_qubits);  // identity
    LinearMatrix(int n_qubits, std::vector<Mask> r);

    static LinearMatrix identity(int n) { return LinearMatrix(n); }
    static LinearMatrix reversal(int n);
    // Linear part of a circuit; H gates are rejected, P and CZ are ignored.
    static LinearMatrix of_circuit(const Circuit& c);

    void apply_cnot(int control, int target) { rows[target] ^= rows[control]; }
    bool is_identity() const;
    bool is_invertible() const;
    LinearMatrix inverse() const;  // throws std::domain_error if singular
    LinearMatrix transpose() const;
    // Mask m over the wires, rewritten over the input variables.
    Mask pull_back(Mask m) const;

    bool operator==(const LinearMatrix&) const = default;

    std::string str() const;
    static LinearMatrix parse(std::string_view text);
};

// The map of applying a and then b.
LinearMatrix compose(const LinearMatrix& a, const LinearMatrix& b);

enum class LinearBackend { Gauss, LNN };

// Column-by-column elimination, lowest index first; at most n^2 CNOTs.
Circuit synth_cnot_gauss(const LinearMatrix& g);

// Nearest-neighbour CNOT circuit with two-qubit depth at most 5n.
Circuit synth_cnot_lnn(const LinearMatrix& g);

Circuit synth_cnot(const LinearMatrix& g, LinearBackend backend);

}  // namespace stabcanon
