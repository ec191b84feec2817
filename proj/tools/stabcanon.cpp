// Command-line front end: canonicalize, verify, depth, table1, gen.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "stabcanon/stabcanon.hpp"

using namespace stabcanon;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

int default_threads() {
    if (const char* env = std::getenv("STABCANON_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

const char* stage_name(StageKind k) {
    switch (k) {
        case StageKind::H: return "H";
        case StageKind::P: return "P";
        case StageKind::C: return "C";
        case StageKind::CZ: return "CZ";
    }
    return "?";
}

// The form with its trailing -P-CZ-C- block written in the requested order.
Circuit ordered_circuit(const StagedForm& f, StageOrder order) {
    Circuit c(f.n);
    for (std::size_t i = 0; i < 5; ++i) c.append(f.stages[i].circuit(f.n));
    PhasePolynomial tail = diagonal_polynomial({f.stages[5].powers, f.stages[6].cz});
    c.append(reexpress(tail, f.stages[7].linear, order));
    return c;
}

struct CanonArgs {
    std::string input;
    std::string output;
    bool stages = false;
    bool lnn = false;
    std::string order;
};

int cmd_canonicalize(const CanonArgs& a) {
    Circuit src = Circuit::load(a.input);
    Canonical canon = canonicalize(src);
    const StagedForm& f = canon.form;
    const int n = src.n;
    const int depth = two_qubit_depth(canon.lnn);
    const int bound = std::max(14 * n - 4, 0);

    // Reports go to stderr when the circuit itself is written to stdout.
    const bool circuit_to_stdout = (a.lnn || !a.order.empty()) && (a.output.empty() || a.output == "-");
    std::ostream& report = circuit_to_stdout ? std::cerr : std::cout;
    report << "qubits " << n << '\n';
    for (std::size_t i = 0; i < f.stages.size(); ++i) {
        Circuit sc = f.stages[i].circuit(n);
        report << fmt::format("stage {} {:<2} gates {} two-qubit {}\n", i + 1, stage_name(f.stages[i].kind),
                              sc.gates.size(), sc.two_qubit_count());
    }
    report << fmt::format("lnn gates {} two-qubit {} depth {}\n", canon.lnn.gates.size(),
                          canon.lnn.two_qubit_count(), depth);
    const bool ok = depth <= bound && validate_layout(canon.lnn, Layout::LNN) &&
                    circuit_to_tableau(canon.lnn) == circuit_to_tableau(src);
    report << fmt::format("bound 14n-4 = {} {}\n", bound, ok ? "ok" : "FAIL");

    if (a.stages) report << f.str();
    if (a.lnn) {
        write_output(a.output, canon.lnn.str());
    } else if (!a.order.empty()) {
        static const std::map<std::string, StageOrder> orders = {
            {"pczc", StageOrder::PCZC}, {"cpcz", StageOrder::CPCZ}, {"czpc", StageOrder::CZPC}, {"cczp", StageOrder::CCZP}};
        write_output(a.output, ordered_circuit(f, orders.at(a.order)).str());
    } else if (!a.output.empty()) {
        write_output(a.output, f.str());
    }
    return ok ? kOk : kMismatch;
}

int cmd_verify(const std::string& pa, const std::string& pb, bool exact) {
    Circuit a = Circuit::load(pa), b = Circuit::load(pb);
    if (a.n != b.n) {
        std::cerr << "error: qubit counts differ (" << a.n << " vs " << b.n << ")\n";
        return kUsage;
    }
    if (exact && a.n > 5) {
        std::cerr << "error: --exact supports at most 5 qubits\n";
        return kUsage;
    }
    bool equal = tableau_equal(circuit_to_tableau(a), circuit_to_tableau(b));
    if (equal && exact) equal = unitary_equal(dense_unitary(a), dense_unitary(b), PhaseMode::Exact);
    std::cout << (equal ? "equal" : "different") << '\n';
    return equal ? kOk : kMismatch;
}

int cmd_depth(const std::string& path, const std::string& layout) {
    Circuit c = Circuit::load(path);
    std::cout << "two-qubit depth " << two_qubit_depth(c) << '\n';
    bool valid = layout == "all" || validate_layout(c, Layout::LNN);
    std::cout << "layout " << layout << ' ' << (valid ? "valid" : "invalid") << '\n';
    return valid ? kOk : kMismatch;
}

int cmd_table1(int max_n, bool csv, int threads) {
    auto rows = table1_report(max_n, threads);
    std::cout << (csv ? table1_csv(rows) : table1_ascii(rows));
    for (const auto& r : rows)
        if (!r.ok()) return kMismatch;
    return kOk;
}

int cmd_gen(int n, int gates, std::uint64_t seed, const std::string& kind, const std::string& output) {
    Circuit c(n);
    if (kind == "clifford") {
        c = random_clifford_circuit(n, seed, gates);
    } else {
        // (-P-C-) blocks of n phases and n CNOTs each.
        std::mt19937_64 rng(seed);
        while (static_cast<int>(c.gates.size()) < gates) {
            for (int q = 0; q < n; ++q) c.add(Gate::p(q, static_cast<int>(rng() % 4)));
            for (int k = 0; k < n && n > 1; ++k) {
                int a = static_cast<int>(rng() % n);
                c.add(Gate::cnot(a, (a + 1 + static_cast<int>(rng() % (n - 1))) % n));
            }
            if (n == 1) break;
        }
    }
    write_output(output, c.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Clifford circuit canonicalization and LNN compilation"};
    app.require_subcommand(1);

    CanonArgs canon;
    auto* c = app.add_subcommand("canonicalize", "eight-stage form and LNN circuit of a circuit file");
    c->add_option("input", canon.input, "circuit file")->required();
    c->add_flag("--stages", canon.stages, "print the eight-stage form");
    c->add_flag("--lnn", canon.lnn, "write the LNN circuit");
    c->add_option("--order", canon.order, "write the form with the trailing block in this order")
        ->check(CLI::IsMember({"pczc", "cpcz", "czpc", "cczp"}));
    c->add_option("-o,--output", canon.output, "output file (default stdout)");

    std::string va, vb;
    bool exact = false;
    auto* v = app.add_subcommand("verify", "exit 0 iff the two circuits are equal");
    v->add_option("a", va)->required();
    v->add_option("b", vb)->required();
    v->add_flag("--exact", exact, "also compare dense unitaries including global phase (n <= 5)");

    std::string dpath, layout = "all";
    auto* d = app.add_subcommand("depth", "two-qubit depth and layout check");
    d->add_option("input", dpath)->required();
    d->add_option("--layout", layout)->check(CLI::IsMember({"lnn", "all"}));

    int max_n = 5, threads = default_threads();
    bool csv = false;
    auto* t = app.add_subcommand("table1", "optimal -CZ- and -C- gate counts for small n");
    t->add_option("--max-n", max_n)->check(CLI::Range(2, 5));
    t->add_flag("--csv", csv);
    t->add_option("--threads", threads)->check(CLI::PositiveNumber);

    int gn = 2, ggates = -1;
    std::uint64_t seed = 0;
    std::string kind = "clifford", gout;
    auto* g = app.add_subcommand("gen", "random circuit from a seed");
    g->add_option("--n", gn)->check(CLI::Range(1, 64));
    g->add_option("--gates", ggates, "gate count (default 10 n^2)");
    g->add_option("--seed", seed);
    g->add_option("--kind", kind)->check(CLI::IsMember({"clifford", "pc"}));
    g->add_option("-o,--output", gout);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*c) return cmd_canonicalize(canon);
        if (*v) return cmd_verify(va, vb, exact);
        if (*d) return cmd_depth(dpath, layout);
        if (*t) return cmd_table1(max_n, csv, threads);
        if (*g) return cmd_gen(gn, ggates < 0 ? 10 * gn * gn : ggates, seed, kind, gout);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
