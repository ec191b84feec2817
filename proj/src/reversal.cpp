#include "stabcanon/reversal.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabcanon {

namespace {

// Both half stages are a layer of CNOTs on (i, i+1) followed by a layer on
// (i+1, i+2) pairs; only the orientations and the parity of the start differ
// between odd and even n.
std::vector<Gate> half_s1(int n) {
    std::vector<Gate> g;
    int first_end = (n % 2) ? n - 2 : n - 1;
    for (int i = 0; i + 1 <= first_end; i += 2) g.push_back(Gate::cnot(i, i + 1));
    int second_end = (n % 2) ? n - 1 : n - 2;
    for (int i = 2; i <= second_end; i += 2) g.push_back(Gate::cnot(i, i - 1));
    return g;
}

std::vector<Gate> half_s2(int n) {
    std::vector<Gate> g;
    int first_end = (n % 2) ? n - 2 : n - 1;
    for (int i = 1; i <= first_end; i += 2) g.push_back(Gate::cnot(i, i - 1));
    int second_end = (n % 2) ? n - 1 : n - 2;
    for (int i = 1; i + 1 <= second_end; i += 2) g.push_back(Gate::cnot(i, i + 1));
    return g;
}

}  // namespace

Circuit ReversalNetwork::circuit(std::size_t first, std::size_t last) const {
    Circuit c(n);
    last = std::min(last, halves.size());
    for (std::size_t h = first; h < last; ++h)
        for (const Gate& g : halves[h]) c.gates.push_back(g);
    return c;
}

ReversalNetwork reversal_network(int n) {
    if (n < 1) throw std::invalid_argument("reversal_network: n must be positive");
    ReversalNetwork net{n, {}};
    if (n == 1) return net;
    auto s1 = half_s1(n), s2 = half_s2(n);
    for (int h = 0; h <= n; ++h) net.halves.push_back(h % 2 == 0 ? s1 : s2);
    return net;
}

}  // namespace stabcanon
