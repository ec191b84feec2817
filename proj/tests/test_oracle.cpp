#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "stabcanon/czsynth.hpp"
#include "stabcanon/oracle.hpp"
#include "stabcanon/tableau.hpp"

using namespace stabcanon;
using cd = std::complex<double>;

TEST(Dense, GateMatrices) {
    DenseUnitary h = dense_unitary(Circuit(1, {Gate::h(0)}));
    const double r = 1 / std::sqrt(2.0);
    DenseUnitary expect(2, 2);
    expect << r, r, r, -r;
    EXPECT_TRUE(unitary_equal(h, expect, PhaseMode::Exact));

    DenseUnitary z = dense_unitary(Circuit(1, {Gate::p(0), Gate::p(0)}));
    DenseUnitary zz(2, 2);
    zz << 1, 0, 0, -1;
    EXPECT_TRUE(unitary_equal(z, zz, PhaseMode::Exact));

    EXPECT_TRUE(unitary_equal(dense_unitary(Circuit(2, {Gate::cz(0, 1)})),
                              dense_unitary(Circuit(2, {Gate::h(1), Gate::cnot(0, 1), Gate::h(1)})), PhaseMode::Exact));
    EXPECT_THROW(dense_unitary(Circuit(11)), std::invalid_argument);
}

TEST(Dense, CnotActsOnBits) {
    // Control qubit 0 is bit 0 of the basis index.
    DenseUnitary u = dense_unitary(Circuit(2, {Gate::cnot(0, 1)}));
    EXPECT_NEAR(std::abs(u(3, 1)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(u(2, 2)), 1.0, 1e-12);
}

TEST(Dense, EqualityModes) {
    DenseUnitary u = dense_unitary(random_clifford_circuit(3, 4));
    EXPECT_TRUE(unitary_equal(u, u, PhaseMode::Exact));
    EXPECT_TRUE(unitary_equal(u, u, PhaseMode::UpToGlobalPhase));
    DenseUnitary v = u * cd(0, 1);
    EXPECT_FALSE(unitary_equal(u, v, PhaseMode::Exact));
    EXPECT_TRUE(unitary_equal(u, v, PhaseMode::UpToGlobalPhase));
    EXPECT_THROW(unitary_equal(u, DenseUnitary::Identity(4, 4), PhaseMode::Exact), std::invalid_argument);
}

TEST(Dense, UnitaryWithinTolerance) {
    for (int n = 1; n <= 6; ++n) {
        DenseUnitary u = dense_unitary(random_clifford_circuit(n, 100 + n));
        EXPECT_LT((u.adjoint() * u - DenseUnitary::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(Dense, TableauEqualityAgreesWithDense) {
    std::mt19937_64 rng(41);
    int agreements = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        Circuit a = random_clifford_circuit(n, rng(), 6);
        // Half the pairs differ by a random trailing gate, half are rewrites.
        Circuit b = a;
        if (trial % 2 == 0) {
            b.add(Gate::h(0)).add(Gate::h(0));
            if (n > 1) b.add(Gate::cz(0, 1)).add(Gate::h(1)).add(Gate::cnot(0, 1)).add(Gate::h(1));
        } else {
            b.add(Gate::p(static_cast<int>(rng() % n), 1 + static_cast<int>(rng() % 3)));
        }
        bool t = tableau_equal(circuit_to_tableau(a), circuit_to_tableau(b));
        bool d = unitary_equal(dense_unitary(a), dense_unitary(b), PhaseMode::UpToGlobalPhase);
        ASSERT_EQ(t, d);
        agreements += t;
    }
    EXPECT_EQ(agreements, 100);
}

TEST(Dense, PhaseLinearMatchesExtraction) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 5);
        Circuit c(n);
        for (int i = 0; i < 20; ++i) {
            int a = static_cast<int>(rng() % n);
            if (n == 1 || rng() % 2) c.add(Gate::p(a, 1 + static_cast<int>(rng() % 3)));
            else c.add(Gate::cnot(a, (a + 1 + static_cast<int>(rng() % (n - 1))) % n));
        }
        // Independent construction of x -> i^{p(x)} |g x>.
        Extraction e = extract(c);
        DenseUnitary m = DenseUnitary::Zero(1 << n, 1 << n);
        const cd ipow[4] = {1, cd(0, 1), -1, cd(0, -1)};
        for (Mask x = 0; x < (Mask{1} << n); ++x) {
            int phase = 0;
            for (const auto& [mask, k] : e.p.terms) phase += k * parity(mask & x);
            Mask y = 0;
            for (int w = 0; w < n; ++w) y |= Mask(parity(e.g.rows[w] & x)) << w;
            m(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = ipow[phase & 3];
        }
        ASSERT_TRUE(unitary_equal(dense_unitary(c), m, PhaseMode::Exact));
        ASSERT_TRUE(unitary_equal(phase_linear_unitary(e.p, e.g), m, PhaseMode::Exact));
    }
}

TEST(Bfs, CzOnlyWorstIsAllEdges) {
    for (int n = 2; n <= 6; ++n) EXPECT_EQ(bfs_optimal(n, GateSet::CZOnly, TargetGroup::CZLayers).worst, n * (n - 1) / 2);
    BfsResult r = bfs_optimal(3, GateSet::CZOnly, TargetGroup::CZLayers);
    EXPECT_EQ(r.elements, 8u);
    EXPECT_EQ(r.histogram, (std::vector<std::uint64_t>{1, 3, 3, 1}));
}

TEST(Bfs, CnotOnly) {
    BfsResult r2 = bfs_optimal(2, GateSet::CNOTOnly, TargetGroup::Linear);
    EXPECT_EQ(r2.worst, 3);
    EXPECT_EQ(r2.elements, 6u);
    BfsResult r3 = bfs_optimal(3, GateSet::CNOTOnly, TargetGroup::Linear);
    EXPECT_EQ(r3.worst, 6);
    EXPECT_EQ(r3.elements, 168u);
    BfsResult r4 = bfs_optimal(4, GateSet::CNOTOnly, TargetGroup::Linear, 2);
    EXPECT_EQ(r4.worst, 9);
    EXPECT_EQ(r4.elements, 20160u);
    EXPECT_EQ(bfs_optimal(4, GateSet::CNOTOnly, TargetGroup::Linear, 1).cost, r4.cost);
}

TEST(Bfs, MixedSmall) {
    EXPECT_EQ(bfs_optimal(2, GateSet::Mixed, TargetGroup::CZLayers).worst, 1);
    EXPECT_EQ(bfs_optimal(3, GateSet::Mixed, TargetGroup::CZLayers).worst, 3);
    for (int n = 2; n <= 3; ++n) {
        BfsResult mixed = bfs_optimal(n, GateSet::Mixed, TargetGroup::Linear);
        BfsResult cnot = bfs_optimal(n, GateSet::CNOTOnly, TargetGroup::Linear);
        EXPECT_EQ(mixed.cost, cnot.cost);
    }
}

TEST(Bfs, SearchCostMatchesBfsOnSmallLayers) {
    BfsResult r = bfs_optimal(3, GateSet::Mixed, TargetGroup::CZLayers);
    for (std::uint64_t e = 0; e < 8; ++e) {
        CZLayer l(3);
        int idx = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b, ++idx)
                if ((e >> idx) & 1) l.toggle(a, b);
        EXPECT_EQ(cz_optimal_cost(l), r.cost[bfs_target_key(l)]);
    }
}

TEST(Bfs, Guards) {
    EXPECT_THROW(bfs_optimal(9, GateSet::CZOnly, TargetGroup::CZLayers), std::invalid_argument);
    EXPECT_THROW(bfs_optimal(6, GateSet::CNOTOnly, TargetGroup::Linear), std::invalid_argument);
    EXPECT_THROW(bfs_optimal(4, GateSet::Mixed, TargetGroup::Linear), std::invalid_argument);
    EXPECT_THROW(bfs_optimal(3, GateSet::CZOnly, TargetGroup::Linear), std::invalid_argument);
}

TEST(Closure, SymplecticGroupOrder) {
    EXPECT_EQ(symplectic_closure_size(1), 6u);
    EXPECT_EQ(symplectic_closure_size(2), 720u);
    EXPECT_EQ(symplectic_order(1), 6);
    EXPECT_EQ(symplectic_order(2), 720);
}

TEST(Table1, SmallRows) {
    auto rows = table1_report(3);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].cz_czonly.value, 1);
    EXPECT_EQ(rows[0].cz_mixed.value, 1);
    EXPECT_EQ(rows[0].c_cnotonly.value, 3);
    EXPECT_EQ(rows[0].c_mixed.value, 3);
    EXPECT_EQ(rows[1].cz_czonly.value, 3);
    EXPECT_EQ(rows[1].cz_mixed.value, 3);
    EXPECT_EQ(rows[1].c_cnotonly.value, 6);
    EXPECT_EQ(rows[1].c_mixed.value, 6);
    for (const auto& r : rows) EXPECT_TRUE(r.ok());
    EXPECT_EQ(table1_csv(rows), "n,cz_czonly,cz_mixed,c_cnotonly,c_mixed\n2,1,1,3,3\n3,3,3,6,6\n");
    EXPECT_NE(table1_ascii(rows).find("-CZ-"), std::string::npos);
}
