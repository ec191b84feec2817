#include "stabcanon/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "stabcanon/bits.hpp"

namespace stabcanon {

std::string Gate::str() const {
    switch (kind) {
        case GateKind::H:
            return "H " + std::to_string(a);
        case GateKind::P:
            if (power == 2) return "Z " + std::to_string(a);
            if (power == 3) return "PDG " + std::to_string(a);
            return "P " + std::to_string(a);
        case GateKind::CNOT:
            return "CX " + std::to_string(a) + " " + std::to_string(b);
        case GateKind::CZ:
            return "CZ " + std::to_string(a) + " " + std::to_string(b);
    }
    return {};
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

void check_gate(const Gate& g, int n) {
    auto in_range = [n](int q) { return q >= 0 && q < n; };
    if (!in_range(g.a)) throw std::invalid_argument("qubit index out of range in " + g.str());
    if (g.is_two_qubit()) {
        if (!in_range(g.b)) throw std::invalid_argument("qubit index out of range in " + g.str());
        if (g.a == g.b) throw std::invalid_argument("repeated qubit in " + g.str());
    }
    if (g.kind == GateKind::P && (g.power < 0 || g.power > 3))
        throw std::invalid_argument("P power must be in 0..3");
}

Circuit::Circuit(int n_qubits, std::vector<Gate> g) : n(n_qubits) {
    gates.reserve(g.size());
    for (const Gate& x : g) add(x);
}

Circuit& Circuit::add(const Gate& g) {
    check_gate(g, n);
    if (g.kind == GateKind::P && g.power == 0) return *this;
    gates.push_back(g.kind == GateKind::CZ ? Gate::cz(g.a, g.b) : g);
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.n != n) throw std::invalid_argument("qubit count mismatch in append");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    return *this;
}

std::size_t Circuit::two_qubit_count() const {
    return std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.is_two_qubit(); });
}

std::string Circuit::str() const {
    std::string out = "QUBITS " + std::to_string(n) + "\n";
    for (const Gate& g : gates) out += g.str() + "\n";
    return out;
}

std::ostream& operator<<(std::ostream& os, const Gate& g) { return os << g.str(); }
std::ostream& operator<<(std::ostream& os, const Circuit& c) { return os << c.str(); }

namespace {

std::string upper(std::string s) {
    for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

int parse_index(const std::string& tok, int line) {
    std::size_t used = 0;
    long v = -1;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "expected qubit index, got '" + tok + "'");
    }
    if (used != tok.size() || v < 0) throw ParseError(line, "bad qubit index '" + tok + "'");
    return static_cast<int>(v);
}

}  // namespace

Circuit Circuit::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    int n = -1;
    Circuit c;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        std::string op = upper(tok[0]);
        if (n < 0) {
            if (op != "QUBITS" || tok.size() != 2) throw ParseError(line_no, "expected 'QUBITS n' header");
            n = parse_index(tok[1], line_no);
            if (n > kMaxQubits) throw ParseError(line_no, "at most 64 qubits are supported");
            c = Circuit(n);
            continue;
        }
        std::size_t arity;
        Gate g;
        if (op == "H") {
            arity = 1, g.kind = GateKind::H;
        } else if (op == "P" || op == "S") {
            arity = 1, g = Gate::p(0, 1);
        } else if (op == "PDG" || op == "SDG") {
            arity = 1, g = Gate::p(0, 3);
        } else if (op == "Z") {
            arity = 1, g = Gate::p(0, 2);
        } else if (op == "CX" || op == "CNOT") {
            arity = 2, g.kind = GateKind::CNOT;
        } else if (op == "CZ") {
            arity = 2, g.kind = GateKind::CZ;
        } else {
            throw ParseError(line_no, "unknown mnemonic '" + tok[0] + "'");
        }
        if (tok.size() != arity + 1) throw ParseError(line_no, "wrong operand count for " + op);
        g.a = parse_index(tok[1], line_no);
        if (arity == 2) g.b = parse_index(tok[2], line_no);
        try {
            c.add(g);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    if (n < 0) throw ParseError(line_no, "missing 'QUBITS n' header");
    return c;
}

Circuit Circuit::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

int two_qubit_depth(const Circuit& c) {
    std::vector<int> level(c.n, 0);
    int depth = 0;
    for (const Gate& g : c.gates) {
        if (!g.is_two_qubit()) continue;
        int l = std::max(level[g.a], level[g.b]) + 1;
        level[g.a] = level[g.b] = l;
        depth = std::max(depth, l);
    }
    return depth;
}

bool validate_layout(const Circuit& c, Layout l) {
    if (l == Layout::AllToAll) return true;
    return std::all_of(c.gates.begin(), c.gates.end(),
                       [](const Gate& g) { return !g.is_two_qubit() || std::abs(g.a - g.b) == 1; });
}

Circuit invert_circuit(const Circuit& c) {
    Circuit out(c.n);
    out.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::P) g.power = (4 - g.power) % 4;
        out.add(g);
    }
    return out;
}

Circuit lower_cz(const Circuit& c) {
    Circuit out(c.n);
    for (const Gate& g : c.gates) {
        if (g.kind != GateKind::CZ) {
            out.gates.push_back(g);
            continue;
        }
        out.gates.push_back(Gate::h(g.b));
        out.gates.push_back(Gate::cnot(g.a, g.b));
        out.gates.push_back(Gate::h(g.b));
    }
    return out;
}

}  // namespace stabcanon
