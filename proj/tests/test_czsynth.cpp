#include <gtest/gtest.h>

#include <random>
#include <set>

#include "stabcanon/czsynth.hpp"
#include "stabcanon/oracle.hpp"
#include "stabcanon/reversal.hpp"
#include "stabcanon/tableau.hpp"

using namespace stabcanon;

namespace {

CZLayer layer_from_bits(int n, std::uint64_t bits) {
    CZLayer l(n);
    int e = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++e)
            if ((bits >> e) & 1) l.toggle(a, b);
    return l;
}

CZLayer double_star() {
    // Qubits 0 and 1 joined, each adjacent to 2, 3, 4.
    return CZLayer(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
}

// Independent pattern oracle for the wire labels, 1-based as in the proof.
std::vector<IntervalLabel> pattern_schedule(int n, int t) {
    std::vector<int> pj, pk;
    if (n % 2 == 1) {
        // Pj = (n-1, n-3, n-3, ..., 2, 2, 1, 1, 3, 3, ..., n-2, n-2)
        pj.push_back(n - 1);
        for (int v = n - 3; v >= 2; v -= 2) pj.insert(pj.end(), {v, v});
        for (int v = 1; v <= n - 2; v += 2) pj.insert(pj.end(), {v, v});
        // Pk = (3, 3, 5, 5, ..., n, n, n-1, n-1, ..., 4, 4, 2)
        for (int v = 3; v <= n; v += 2) pk.insert(pk.end(), {v, v});
        for (int v = n - 1; v >= 4; v -= 2) pk.insert(pk.end(), {v, v});
        pk.push_back(2);
    } else {
        // Pj = (n, n-2, n-2, ..., 2, 2, 1, 1, 3, 3, ..., n-3, n-3, n-1)
        pj.push_back(n);
        for (int v = n - 2; v >= 2; v -= 2) pj.insert(pj.end(), {v, v});
        for (int v = 1; v <= n - 3; v += 2) pj.insert(pj.end(), {v, v});
        pj.push_back(n - 1);
        // Pk = (3, 3, ..., n-1, n-1, n, n, n-2, n-2, ..., 2, 2)
        for (int v = 3; v <= n - 1; v += 2) pk.insert(pk.end(), {v, v});
        for (int v = n; v >= 2; v -= 2) pk.insert(pk.end(), {v, v});
    }
    std::vector<IntervalLabel> out(n);
    for (int i = 1; i <= n; ++i) {
        int a = n % 2 == 1 ? n - 1 - 2 * t + i : n - 2 * t + i;
        int b = 2 * t - 2 + i;
        out[i - 1] = {pj.at(a - 1) - 1, pk.at(b - 1) - 1};
    }
    return out;
}

// Drops the terms that name a single input x_j.
PhasePolynomial without_singletons(const PhasePolynomial& p) {
    PhasePolynomial out(p.n);
    for (const auto& [m, c] : p.terms) {
        int j = lowest_bit(m);
        Mask rest = m & (m - 1);
        bool single = rest ? lowest_bit(rest) == j + 1 : j == 0;
        if (!single) out.add(m, c);
    }
    return out;
}

PhasePolynomial random_y_poly(int n, std::mt19937_64& rng) {
    PhasePolynomial p(n);
    for (int j = 0; j < n; ++j) p.add(bit(j), static_cast<int>(rng() % 4));
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) p.add(bit(j) | bit(k), static_cast<int>(rng() % 4));
    return p;
}

// Reference for synth_czhat_lnn: the diagonal over the prefix variables,
// then the reversal.
Circuit czhat_reference(const PhasePolynomial& p_over_y) {
    const int n = p_over_y.n;
    // x_j = y_{j-1} + y_j, so y-term masks become x intervals.
    PhasePolynomial over_x(n);
    for (const auto& [m, c] : p_over_y.terms) {
        int j = lowest_bit(m);
        Mask rest = m & (m - 1);
        Mask interval = rest ? (low_mask(lowest_bit(rest) + 1) & ~low_mask(j + 1)) : low_mask(j + 1);
        over_x.add(interval, c);
    }
    Circuit c = synthesize_pczc(fold(over_x), LinearMatrix(n));
    c.append(synth_cnot_gauss(LinearMatrix::reversal(n)));
    return c;
}

}  // namespace

TEST(Plain, Examples) {
    EXPECT_TRUE(synth_cz_plain(CZLayer(4)).gates.empty());
    EXPECT_EQ(synth_cz_plain(CZLayer(2, {{0, 1}})), Circuit(2, {Gate::cz(0, 1)}));
    EXPECT_EQ(synth_cz_plain(layer_from_bits(5, 0x3ff)).gates.size(), 10u);
}

TEST(Optimized, DoubleStarInFiveTwoQubitGates) {
    CZLayer l = double_star();
    Circuit c = synth_cz_optimized(l);
    EXPECT_LE(c.two_qubit_count(), 5u);
    EXPECT_EQ(circuit_to_tableau(c), circuit_to_tableau(synth_cz_plain(l)));
    EXPECT_EQ(cz_optimal_cost(l), 5);
    EXPECT_TRUE(synth_cz_optimized(CZLayer(5)).gates.empty());
}

TEST(Optimized, DoubleStarTemplateOnLargerGraphs) {
    // Same pattern embedded in 8 qubits exercises the greedy path.
    CZLayer l(8);
    for (int s = 2; s < 8; ++s) {
        l.toggle(0, s);
        l.toggle(1, s);
    }
    l.toggle(0, 1);
    Circuit c = synth_cz_optimized(l);
    EXPECT_LT(c.two_qubit_count(), l.edges.size());
    EXPECT_EQ(circuit_to_tableau(c), circuit_to_tableau(synth_cz_plain(l)));
}

TEST(Optimized, ExhaustiveN4) {
    int worst = 0;
    for (std::uint64_t bits = 0; bits < 64; ++bits) {
        CZLayer l = layer_from_bits(4, bits);
        Circuit c = synth_cz_optimized(l);
        ASSERT_LE(c.two_qubit_count(), l.edges.size());
        ASSERT_EQ(circuit_to_tableau(c), circuit_to_tableau(synth_cz_plain(l)));
        worst = std::max(worst, static_cast<int>(c.two_qubit_count()));
    }
    EXPECT_LE(worst, 5);
}

TEST(Optimized, NeverWorseThanPlainAndStripsToLinearPart) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);
        CZLayer l = layer_from_bits(n, rng());
        Circuit c = synth_cz_optimized(l);
        ASSERT_LE(c.two_qubit_count(), l.edges.size());
        ASSERT_EQ(circuit_to_tableau(c), circuit_to_tableau(synth_cz_plain(l)));
        Circuit stripped(n);
        for (const Gate& g : c.gates)
            if (g.kind == GateKind::CNOT) stripped.add(g);
        EXPECT_EQ(LinearMatrix::of_circuit(stripped), LinearMatrix::of_circuit(c));
        EXPECT_TRUE(LinearMatrix::of_circuit(c).is_identity());
    }
}

TEST(Schedule, SevenQubitLabels) {
    auto t0 = interval_schedule(7, 0);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(t0[i], (IntervalLabel{i, i}));
    std::vector<IntervalLabel> t1 = {{1, 2}, {0, 2}, {0, 4}, {2, 4}, {2, 6}, {4, 6}, {4, 5}};
    EXPECT_EQ(interval_schedule(7, 1), t1);
    auto t4 = interval_schedule(7, 4);
    for (int i = 0; i < 7; ++i) EXPECT_EQ(t4[i], (IntervalLabel{6 - i, 6 - i}));
    EXPECT_THROW(interval_schedule(7, 5), std::out_of_range);
}

TEST(Schedule, MatchesPatternOracle) {
    for (int n = 3; n <= 64; ++n) {
        int last = n % 2 == 1 ? (n - 1) / 2 : n / 2 - 1;
        for (int t = 1; t <= last; ++t) ASSERT_EQ(interval_schedule(n, t), pattern_schedule(n, t)) << n << " " << t;
    }
}

TEST(Schedule, CoverageEveryIntervalOnce) {
    for (int n = 2; n <= 64; ++n) {
        std::multiset<IntervalLabel> seen;
        ReversalNetwork net = reversal_network(n);
        LinearMatrix g(n);
        auto record = [&] {
            for (int i = 0; i < n; ++i) {
                Mask r = g.rows[i];
                seen.insert({lowest_bit(r), bit_length(r) - 1});
            }
        };
        // Every boundary between half stages, deduplicated by the set below.
        std::set<IntervalLabel> distinct;
        record();
        for (const auto& half : net.halves) {
            for (const Gate& gt : half) g.apply_cnot(gt.a, gt.b);
            record();
        }
        for (const auto& l : seen) distinct.insert(l);
        ASSERT_EQ(distinct.size(), static_cast<std::size_t>(n * (n + 1) / 2)) << n;
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) ASSERT_TRUE(distinct.count({j, k}));
        // All wire labels are contiguous intervals.
        for (const auto& l : seen) ASSERT_TRUE(l.j <= l.k);
    }
}

TEST(Schedule, OddFullStagesCoverExactlyOnce) {
    for (int n = 3; n <= 63; n += 2) {
        std::multiset<IntervalLabel> seen;
        for (int t = 0; t <= (n + 1) / 2; ++t)
            for (const auto& l : interval_schedule(n, t)) seen.insert(l);
        // The final reversal repeats the singletons of t = 0.
        EXPECT_EQ(seen.size(), static_cast<std::size_t>(n * (n + 1) / 2 + n));
        std::set<IntervalLabel> distinct(seen.begin(), seen.end());
        EXPECT_EQ(distinct.size(), static_cast<std::size_t>(n * (n + 1) / 2));
    }
}

TEST(Reversal, NetworkShape) {
    for (int n = 1; n <= 64; ++n) {
        Circuit c = reversal_network(n).circuit();
        EXPECT_TRUE(validate_layout(c, Layout::LNN));
        EXPECT_LE(two_qubit_depth(c), 2 * n + 2);
        EXPECT_EQ(LinearMatrix::of_circuit(c), LinearMatrix::reversal(n));
    }
    EXPECT_EQ(two_qubit_depth(reversal_network(7).circuit()), 16);
}

TEST(PrefixBasis, PreservesValues) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 6);
        PhasePolynomial p(n);
        for (int i = 0; i < 8; ++i) p.add(rng() & low_mask(n), static_cast<int>(rng() % 4));
        PhasePolynomial y = to_prefix_basis(p);
        EXPECT_LE(y.max_weight(), 2);
        for (Mask x = 0; x < (Mask{1} << n); ++x) {
            Mask yv = 0, acc = 0;
            for (int j = 0; j < n; ++j) {
                acc ^= (x >> j) & 1;
                yv |= acc << j;
            }
            ASSERT_EQ(evaluate(y, yv), evaluate(p, x));
        }
    }
}

TEST(CzHat, EmptyPolynomialIsReversal) {
    Circuit c = synth_czhat_lnn(PhasePolynomial(4));
    EXPECT_LE(two_qubit_depth(c), 10);
    EXPECT_EQ(circuit_to_tableau(c), circuit_to_tableau(synth_cnot_gauss(LinearMatrix::reversal(4))));
}

TEST(CzHat, DepthAndLayoutUpTo64) {
    std::mt19937_64 rng(23);
    for (int n = 2; n <= 64; ++n) {
        PhasePolynomial p = random_y_poly(n, rng);
        for (int omit = 0; omit < 4; ++omit) {
            CzHatOptions o{(omit & 1) != 0, (omit & 2) != 0};
            if (omit == 3) EXPECT_THROW(synth_czhat_lnn(p, o), std::invalid_argument);
            if (n < 3 && omit == 3) continue;
            Circuit c = synth_czhat_lnn(omit == 3 ? without_singletons(p) : p, o);
            ASSERT_TRUE(validate_layout(c, Layout::LNN));
            int bound = 2 * n + 2 - 4 * (o.omit_first_s + o.omit_last_s);
            ASSERT_LE(two_qubit_depth(c), std::max(bound, 0)) << n << " " << omit;
        }
    }
    EXPECT_LE(two_qubit_depth(synth_czhat_lnn(random_y_poly(7, rng))), 16);
}

TEST(CzHat, MatchesReferenceDense) {
    std::mt19937_64 rng(24);
    for (int n = 1; n <= 5; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            PhasePolynomial p = random_y_poly(n, rng);
            Circuit ref = czhat_reference(p);
            Circuit c = synth_czhat_lnn(p);
            ASSERT_TRUE(unitary_equal(dense_unitary(c), dense_unitary(ref), PhaseMode::Exact)) << n;
        }
}

TEST(CzHat, OmissionsComposeBack) {
    std::mt19937_64 rng(25);
    for (int n = 2; n <= 12; ++n)
        for (int omit = 1; omit < 4; ++omit) {
            CzHatOptions o{(omit & 1) != 0, (omit & 2) != 0};
            if (n < 3 && omit == 3) continue;
            PhasePolynomial p = random_y_poly(n, rng);
            if (omit == 3) p = without_singletons(p);
            Tableau ref = circuit_to_tableau(czhat_reference(p));
            Circuit c(n);
            if (o.omit_first_s) c.append(czhat_omitted_first(n));
            c.append(synth_czhat_lnn(p, o));
            if (o.omit_last_s) c.append(czhat_omitted_last(n));
            ASSERT_EQ(circuit_to_tableau(c), ref) << n << " " << omit;
        }
}

TEST(CzHat, RejectsHeavyTerms) {
    PhasePolynomial p(3);
    p.add(0b111, 1);
    EXPECT_THROW(synth_czhat_lnn(p), std::invalid_argument);
}
