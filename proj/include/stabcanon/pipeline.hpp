#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabcanon/circuit.hpp"
#include "stabcanon/czlayer.hpp"
#include "stabcanon/linear.hpp"
#include "stabcanon/phasepoly.hpp"
#include "stabcanon/tableau.hpp"

namespace stabcanon {

enum class StageKind { H, P, C, CZ };

struct Stage {
    StageKind kind = StageKind::H;
    Mask hadamards = 0;       // H
    std::vector<int> powers;  // P: power of P on each qubit
    LinearMatrix linear;      // C
    CZLayer cz;               // CZ

    static Stage h(int n, Mask q = 0);
    static Stage p(int n);
    static Stage c(int n);
    static Stage czs(int n);

    bool is_identity() const;
    Circuit circuit(int n, LinearBackend backend = LinearBackend::Gauss) const;
    std::string str() const;
};

struct StagedForm {
    int n = 0;
    std::vector<Stage> stages;

    Circuit circuit(LinearBackend backend = LinearBackend::Gauss) const;
    // H C P C P C H P C P C
    bool is_eleven_stage() const;
    // H C CZ P H P CZ C
    bool is_eight_stage() const;
    int non_identity_stages() const;
    std::string str() const;
};

// Tableau elimination into -H-C-P-C-P-C-H-P-C-P-C-.
StagedForm decompose_11(const Tableau& t);

// -H-C-P-C-P-C-H-P-C-P-C- into -H-C-CZ-P-H-P-CZ-C- by folding both
// phase-linear segments.
StagedForm fold_to_8(const StagedForm& f);

// Nearest-neighbour {P, H, CNOT} circuit of two-qubit depth at most 14n - 4.
Circuit compile_lnn(const StagedForm& f);

struct Canonical {
    StagedForm form;
    Circuit lnn;
};
Canonical canonicalize(const Circuit& c);

}  // namespace stabcanon
