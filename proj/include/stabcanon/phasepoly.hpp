#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stabcanon/bits.hpp"
#include "stabcanon/circuit.hpp"
#include "stabcanon/czlayer.hpp"
#include "stabcanon/linear.hpp"

namespace stabcanon {

// Sum of Z4 coefficients times Boolean linear functions; mask m stands for the
// parity of the variables in m. Zero coefficients are never stored.
struct PhasePolynomial {
    int n = 0;
    std::map<Mask, std::uint8_t> terms;

    PhasePolynomial() = default;
    explicit PhasePolynomial(int n_qubits) : n(n_qubits) {}

    void add(Mask m, int coeff);
    int coeff(Mask m) const;
    int max_weight() const;
    bool empty() const { return terms.empty(); }
    bool operator==(const PhasePolynomial&) const = default;

    // One line per term: coefficient, then the mask with variable 0 first.
    std::string str() const;
};

int evaluate(const PhasePolynomial& p, Mask assignment);

// C|x> = i^{p(x)} |g(x)> for a circuit over P, Z, CNOT, CZ.
struct Extraction {
    PhasePolynomial p;
    LinearMatrix g;
};
Extraction extract(const Circuit& c);

// Rewrites every term of weight >= 3 with the identity
//   u(a+b+c) = 3u(a + b + c + (a+b) + (a+c) + (b+c))   (mod 4),
// where a, b are the two lowest literals and c the rest, from the heaviest
// weight down. The result has weight <= 2 and the same values everywhere.
PhasePolynomial fold(const PhasePolynomial& p);

// Re-expresses p in new variables. Row j of `old_in_new` gives old variable j
// as a mask over the new variables.
PhasePolynomial change_basis(const PhasePolynomial& p, const LinearMatrix& old_in_new);

// Canonical split of a weight <= 2 polynomial: P^{powers[q]} on each qubit
// and one CZ per odd pair coefficient.
struct DiagonalForm {
    std::vector<int> powers;
    CZLayer cz;

    bool operator==(const DiagonalForm&) const = default;
};
DiagonalForm split_diagonal(const PhasePolynomial& p);
PhasePolynomial diagonal_polynomial(const DiagonalForm& d);

// Same function of the inputs, for polynomials of any weight.
bool same_function(const PhasePolynomial& a, const PhasePolynomial& b);

Circuit synthesize_pczc(const PhasePolynomial& p, const LinearMatrix& g,
                        LinearBackend backend = LinearBackend::Gauss);

enum class StageOrder { PCZC, CPCZ, CZPC, CCZP };

Circuit reexpress(const PhasePolynomial& p, const LinearMatrix& g, StageOrder order,
                  LinearBackend backend = LinearBackend::Gauss);

}  // namespace stabcanon
