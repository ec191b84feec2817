#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stabcanon/circuit.hpp"
#include "stabcanon/phasepoly.hpp"

namespace stabcanon {

// Basis state |x> has qubit q in bit q of the index.
using DenseUnitary = Eigen::MatrixXcd;

inline constexpr int kMaxDenseQubits = 10;

DenseUnitary dense_unitary(const Circuit& c);

enum class PhaseMode { Exact, UpToGlobalPhase };

bool unitary_equal(const DenseUnitary& u, const DenseUnitary& v, PhaseMode mode);

// The matrix x -> i^{p(x)} |g x>.
DenseUnitary phase_linear_unitary(const PhasePolynomial& p, const LinearMatrix& g);

enum class GateSet { CZOnly, CNOTOnly, Mixed };
enum class TargetGroup { CZLayers, Linear };

// Exact optimal two-qubit gate counts by breadth-first closure; single-qubit
// gates cost nothing.
struct BfsResult {
    std::string label;
    int n = 0;
    std::size_t elements = 0;              // targets reached
    int worst = 0;                         // maximum optimal count over the targets
    std::vector<std::uint64_t> histogram;  // histogram[k] = targets of optimal count k
    // Optimal count per target, keyed as in bfs_target_key; 0xff if absent.
    std::vector<std::uint8_t> cost;
};

// Target keys: a CZ layer is its edge bitmask in lexicographic pair order;
// a linear map is its rows packed n bits apiece, row 0 lowest.
std::uint64_t bfs_target_key(const CZLayer& layer);
std::uint64_t bfs_target_key(const LinearMatrix& g);

// Size guards: CZ-only n <= 8, CNOT-only n <= 5, mixed n <= 3.
BfsResult bfs_optimal(int n, GateSet set, TargetGroup target, int threads = 1);

// Number of distinct symplectic parts reachable from the identity under
// H, P and CNOT; n <= 3.
std::size_t symplectic_closure_size(int n);

struct Table1Cell {
    int value = 0;
    enum Kind { Exact, UpperBound, Implied } kind = Exact;
    int expected = 0;  // published value
    bool ok() const { return kind == UpperBound ? value <= expected : value == expected; }
    std::string str() const;
};

struct Table1Row {
    int n = 0;
    Table1Cell cz_czonly, cz_mixed, c_cnotonly, c_mixed;
    bool ok() const { return cz_czonly.ok() && cz_mixed.ok() && c_cnotonly.ok() && c_mixed.ok(); }
};

std::vector<Table1Row> table1_report(int max_n = 5, int threads = 1);
std::string table1_ascii(const std::vector<Table1Row>& rows);
std::string table1_csv(const std::vector<Table1Row>& rows);

}  // namespace stabcanon
