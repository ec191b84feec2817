#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabcanon {

enum class GateKind : std::uint8_t { H, P, CNOT, CZ };

// A single gate. P carries a power in {1,2,3}; P^2 is the Z gate.
// For CNOT, a is the control and b the target. CZ is symmetric.
struct Gate {
    GateKind kind = GateKind::H;
    int a = 0;
    int b = -1;
    int power = 0;

    static Gate h(int q) { return {GateKind::H, q, -1, 0}; }
    static Gate p(int q, int power = 1) { return {GateKind::P, q, -1, power}; }
    static Gate z(int q) { return {GateKind::P, q, -1, 2}; }
    static Gate pdg(int q) { return {GateKind::P, q, -1, 3}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0}; }
    static Gate cz(int a, int b) { return a < b ? Gate{GateKind::CZ, a, b, 0} : Gate{GateKind::CZ, b, a, 0}; }

    bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
    bool operator==(const Gate& o) const = default;
    std::string str() const;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what);
    int line() const { return line_; }

  private:
    int line_;
};

struct Circuit {
    int n = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n_qubits) : n(n_qubits) {}
    Circuit(int n_qubits, std::vector<Gate> g);

    // Appends after checking indices; P^0 is dropped.
    Circuit& add(const Gate& g);
    Circuit& append(const Circuit& other);
    std::size_t two_qubit_count() const;
    bool operator==(const Circuit& o) const = default;

    // Native text format: `QUBITS n` followed by one gate per line.
    std::string str() const;
    static Circuit parse(std::string_view text);
    static Circuit load(const std::string& path);
};

std::ostream& operator<<(std::ostream& os, const Gate& g);
std::ostream& operator<<(std::ostream& os, const Circuit& c);

// Throws std::invalid_argument if the gate is malformed for n qubits.
void check_gate(const Gate& g, int n);

enum class Layout { AllToAll, LNN };

// ASAP layering of the two-qubit gates; single-qubit gates are free.
int two_qubit_depth(const Circuit& c);

bool validate_layout(const Circuit& c, Layout l);

Circuit invert_circuit(const Circuit& c);

// Replaces each CZ(a,b) by H(b) CNOT(a,b) H(b).
Circuit lower_cz(const Circuit& c);

}  // namespace stabcanon
