#pragma once

#include <vector>

#include "stabcanon/circuit.hpp"
#include "stabcanon/czlayer.hpp"
#include "stabcanon/phasepoly.hpp"

namespace stabcanon {

// One CZ per edge, in edge order.
Circuit synth_cz_plain(const CZLayer& layer);

// A {P, Z, CNOT, CZ} circuit for the layer with as few two-qubit gates as
// found. For n <= 5 this is a meet-in-the-middle search that is exact up to
// seven two-qubit gates; larger layers use a greedy double-star rewrite.
Circuit synth_cz_optimized(const CZLayer& layer);

// Minimal two-qubit gate count for the layer when n <= 5, or -1 if it exceeds
// the search horizon of seven.
int cz_optimal_cost(const CZLayer& layer);

// x_j + ... + x_k over 0-based inputs, j <= k.
struct IntervalLabel {
    int j = 0;
    int k = 0;

    Mask mask() const { return low_mask(k + 1) & ~low_mask(j); }
    bool operator==(const IntervalLabel&) const = default;
    auto operator<=>(const IntervalLabel&) const = default;
};

// Label carried by each wire after t full stages S of the reversal network,
// 0 <= t <= ceil(n/2).
std::vector<IntervalLabel> interval_schedule(int n, int t);

// Prefix parities y_j = x_0 + ... + x_j. Returns p rewritten over the y
// variables and folded, so every term is a single y_j (the interval [0, j])
// or a pair y_j + y_k (the interval [j+1, k]).
PhasePolynomial to_prefix_basis(const PhasePolynomial& p_over_x);

struct CzHatOptions {
    bool omit_first_s = false;
    bool omit_last_s = false;
};

// Qubit reversal combined with the diagonal i^{p(x)} (applied before the
// reversal), as a nearest-neighbour {P, Z, CNOT} circuit of two-qubit depth
// 2n + 2, less 4 for each omitted boundary stage. With omit_first_s the
// result expects its input to have already passed through the first stage S
// (see czhat_omitted_first); with omit_last_s the last stage S must follow it.
// p is over the prefix variables, weight <= 2. Omitting both stages only
// works when p has no term equal to a single input x_j.
Circuit synth_czhat_lnn(const PhasePolynomial& p_over_y, CzHatOptions opts = {});

// The CNOT circuits dropped by the omission options.
Circuit czhat_omitted_first(int n);
Circuit czhat_omitted_last(int n);

}  // namespace stabcanon
