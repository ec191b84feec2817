#pragma once

#include <utility>
#include <vector>

namespace stabcanon {

// A layer of commuting CZ gates, given by its edge set. Edges are stored with
// a < b, sorted and without repeats.
struct CZLayer {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    CZLayer() = default;
    explicit CZLayer(int n_qubits) : n(n_qubits) {}
    CZLayer(int n_qubits, std::vector<std::pair<int, int>> e);

    // Adds the edge, or removes it if present (CZ is an involution).
    void toggle(int a, int b);
    bool empty() const { return edges.empty(); }
    bool operator==(const CZLayer&) const = default;
};

}  // namespace stabcanon
