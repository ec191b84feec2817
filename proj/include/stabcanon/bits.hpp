#pragma once

#include <bit>
#include <cstdint>

namespace stabcanon {

// Bit vectors over at most 64 qubits. Bit q of a mask refers to qubit q.
using Mask = std::uint64_t;

inline constexpr int kMaxQubits = 64;

constexpr Mask bit(int q) { return Mask{1} << q; }

constexpr Mask low_mask(int n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

constexpr int popcount(Mask m) { return std::popcount(m); }

constexpr bool parity(Mask m) { return (std::popcount(m) & 1) != 0; }

// Number of significant bits; 0 for the zero mask.
constexpr int bit_length(Mask m) { return 64 - std::countl_zero(m); }

constexpr int lowest_bit(Mask m) { return std::countr_zero(m); }

template <class F>
constexpr void for_each_bit(Mask m, F&& f) {
    while (m) {
        f(std::countr_zero(m));
        m &= m - 1;
    }
}

}  // namespace stabcanon
