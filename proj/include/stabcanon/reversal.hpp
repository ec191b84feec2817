#pragma once

#include <vector>

#include "stabcanon/circuit.hpp"

namespace stabcanon {

// The odd-even CNOT network that reverses the order of n qubits. It consists
// of n + 1 alternating half stages S1, S2, S1, ..., each of two-qubit depth 2,
// so a full stage S = S1 S2 has depth 4.
//
// While it runs, every wire carries a parity x_j + ... + x_k of a contiguous
// range of inputs, and every such range shows up exactly once at some
// stage or half-stage boundary.
struct ReversalNetwork {
    int n = 0;
    std::vector<std::vector<Gate>> halves;

    Circuit circuit(std::size_t first = 0, std::size_t last = ~std::size_t{0}) const;
};

ReversalNetwork reversal_network(int n);

}  // namespace stabcanon
