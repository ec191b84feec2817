#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "stabcanon/oracle.hpp"
#include "stabcanon/pipeline.hpp"

using namespace stabcanon;

namespace {

Tableau random_tableau(int n, std::uint64_t seed) { return random_clifford(n, seed); }

}  // namespace

TEST(Decompose, IdentityIsEmpty) {
    for (int n = 1; n <= 6; ++n) {
        StagedForm f = decompose_11(Tableau(n));
        EXPECT_TRUE(f.is_eleven_stage());
        EXPECT_EQ(f.non_identity_stages(), 0);
    }
}

TEST(Decompose, SingleCnotIsLinearOnly) {
    Tableau t = circuit_to_tableau(Circuit(3, {Gate::cnot(0, 2)}));
    StagedForm f = decompose_11(t);
    ASSERT_TRUE(f.is_eleven_stage());
    EXPECT_EQ(circuit_to_tableau(f.circuit()), t);
    for (const Stage& s : f.stages)
        if (!s.is_identity()) EXPECT_EQ(s.kind, StageKind::C);
}

TEST(Decompose, RandomTableausRecompose) {
    for (int n = 1; n <= 8; ++n)
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            Tableau t = random_tableau(n, seed * 31 + n);
            StagedForm f = decompose_11(t);
            ASSERT_TRUE(f.is_eleven_stage());
            ASSERT_EQ(circuit_to_tableau(f.circuit()), t) << n << " " << seed;
        }
}

TEST(Decompose, StructuredInputs) {
    std::vector<Circuit> cases = {
        Circuit(1, {Gate::h(0)}),
        Circuit(1, {Gate::p(0)}),
        Circuit(1, {Gate::h(0), Gate::z(0), Gate::h(0)}),
        Circuit(2, {Gate::cz(0, 1)}),
        Circuit(2, {Gate::h(0), Gate::h(1)}),
        Circuit(3, {Gate::h(1), Gate::cnot(1, 2), Gate::p(2), Gate::h(0), Gate::cz(0, 2)}),
        Circuit(4, {Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::cnot(2, 3), Gate::cnot(3, 0)}),
    };
    for (const Circuit& c : cases) {
        Tableau t = circuit_to_tableau(c);
        StagedForm f = decompose_11(t);
        ASSERT_TRUE(f.is_eleven_stage());
        EXPECT_EQ(circuit_to_tableau(f.circuit()), t) << c;
        StagedForm e = fold_to_8(f);
        EXPECT_EQ(circuit_to_tableau(e.circuit()), t) << c;
        EXPECT_EQ(circuit_to_tableau(compile_lnn(e)), t) << c;
    }
}

TEST(Fold8, IdentityAndLinearOnly) {
    StagedForm id = fold_to_8(decompose_11(Tableau(4)));
    EXPECT_TRUE(id.is_eight_stage());
    EXPECT_EQ(id.non_identity_stages(), 0);

    StagedForm eleven = decompose_11(Tableau(3));
    LinearMatrix g(3);
    g.apply_cnot(0, 1);
    g.apply_cnot(2, 0);
    eleven.stages[1].linear = g;
    StagedForm eight = fold_to_8(eleven);
    ASSERT_TRUE(eight.is_eight_stage());
    EXPECT_EQ(eight.stages[1].linear, g);
    EXPECT_EQ(eight.non_identity_stages(), 1);

    StagedForm bad = eight;
    EXPECT_THROW(fold_to_8(bad), std::invalid_argument);
}

TEST(Fold8, RandomTableaus) {
    for (int n = 1; n <= 8; ++n)
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            Tableau t = random_tableau(n, 1000 + seed * 7 + n);
            StagedForm e = fold_to_8(decompose_11(t));
            ASSERT_TRUE(e.is_eight_stage());
            ASSERT_LE(e.non_identity_stages(), 8);
            ASSERT_EQ(circuit_to_tableau(e.circuit()), t);
            // The CZ payloads are at most n(n-1)/2 edges; P payloads n powers.
            for (const Stage& s : e.stages) {
                if (s.kind == StageKind::CZ) ASSERT_LE(s.cz.edges.size(), static_cast<std::size_t>(n * (n - 1) / 2));
                if (s.kind == StageKind::P) ASSERT_EQ(s.powers.size(), static_cast<std::size_t>(n));
            }
        }
}

TEST(Compile, IdentityIsEmpty) {
    Circuit c = compile_lnn(fold_to_8(decompose_11(Tableau(5))));
    EXPECT_TRUE(c.gates.empty());
    EXPECT_EQ(two_qubit_depth(c), 0);
}

TEST(Compile, DepthBoundAndLayout) {
    for (int n = 1; n <= 20; ++n)
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Tableau t = random_tableau(n, 5000 + seed * 13 + n);
            Circuit c = compile_lnn(fold_to_8(decompose_11(t)));
            ASSERT_TRUE(validate_layout(c, Layout::LNN));
            ASSERT_LE(two_qubit_depth(c), std::max(14 * n - 4, 0)) << n;
            ASSERT_EQ(circuit_to_tableau(c), t) << n << " " << seed;
            for (const Gate& g : c.gates) ASSERT_NE(g.kind, GateKind::CZ);
        }
}

TEST(Compile, DenseUpToGlobalPhase) {
    for (int n = 1; n <= 6; ++n)
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            Circuit src = random_clifford_circuit(n, 77 + seed * 3 + n);
            Circuit c = compile_lnn(fold_to_8(decompose_11(circuit_to_tableau(src))));
            ASSERT_TRUE(unitary_equal(dense_unitary(c), dense_unitary(src), PhaseMode::UpToGlobalPhase));
        }
}

TEST(Compile, SevenQubitBound) {
    Circuit c = compile_lnn(fold_to_8(decompose_11(random_tableau(7, 99))));
    EXPECT_LE(two_qubit_depth(c), 94);
    EXPECT_TRUE(validate_layout(c, Layout::LNN));
}

TEST(Canonicalize, Examples) {
    Canonical empty = canonicalize(Circuit(3));
    EXPECT_EQ(empty.form.non_identity_stages(), 0);
    EXPECT_TRUE(empty.lnn.gates.empty());

    Canonical h = canonicalize(Circuit(1, {Gate::h(0)}));
    ASSERT_TRUE(h.form.is_eight_stage());
    EXPECT_EQ(h.form.non_identity_stages(), 1);
    EXPECT_FALSE(h.form.stages[0].is_identity());
}

TEST(Canonicalize, RandomEightQubitCircuit) {
    std::mt19937_64 rng(31);
    Circuit src(8);
    for (int i = 0; i < 200; ++i) {
        int a = static_cast<int>(rng() % 8), b = (a + 1 + static_cast<int>(rng() % 7)) % 8;
        switch (rng() % 4) {
            case 0: src.add(Gate::h(a)); break;
            case 1: src.add(Gate::p(a)); break;
            case 2: src.add(Gate::cnot(a, b)); break;
            default: src.add(Gate::cz(a, b)); break;
        }
    }
    Canonical c = canonicalize(src);
    Tableau t = circuit_to_tableau(src);
    EXPECT_EQ(circuit_to_tableau(c.form.circuit()), t);
    EXPECT_EQ(circuit_to_tableau(c.lnn), t);
    EXPECT_LE(two_qubit_depth(c.lnn), 108);
}

TEST(Canonicalize, PcBlocksHaveNoHadamards) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        Circuit src(n);
        for (int b = 0; b < 3; ++b) {
            for (int q = 0; q < n; ++q) src.add(Gate::p(q, static_cast<int>(rng() % 4)));
            for (int k = 0; k < n; ++k) {
                int a = static_cast<int>(rng() % n);
                src.add(Gate::cnot(a, (a + 1 + static_cast<int>(rng() % (n - 1))) % n));
            }
        }
        Canonical c = canonicalize(src);
        for (const Stage& s : c.form.stages)
            if (s.kind == StageKind::H) EXPECT_TRUE(s.is_identity());
        EXPECT_EQ(circuit_to_tableau(c.lnn), circuit_to_tableau(src));
    }
}

TEST(Dump, OneStagePerLine) {
    StagedForm f = fold_to_8(decompose_11(circuit_to_tableau(Circuit(2, {Gate::h(0), Gate::cz(0, 1)}))));
    std::string s = f.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 8);
    EXPECT_EQ(s.rfind("H:", 0), 0u);
}
