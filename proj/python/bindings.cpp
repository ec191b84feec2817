#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stabcanon/stabcanon.hpp"

namespace py = pybind11;
using namespace stabcanon;

namespace {

StageOrder parse_order(const std::string& s) {
    if (s == "pczc") return StageOrder::PCZC;
    if (s == "cpcz") return StageOrder::CPCZ;
    if (s == "czpc") return StageOrder::CZPC;
    if (s == "cczp") return StageOrder::CCZP;
    throw py::value_error("order must be one of pczc, cpcz, czpc, cczp");
}

PhasePolynomial poly_from_dict(int n, const std::map<Mask, int>& terms) {
    PhasePolynomial p(n);
    for (auto [m, c] : terms) p.add(m, c);
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Clifford circuit canonicalization and nearest-neighbour compilation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<int>(), py::arg("n"))
        .def_static("parse", &Circuit::parse, py::arg("text"))
        .def_static("load", &Circuit::load, py::arg("path"))
        .def_readonly("n", &Circuit::n)
        .def("__len__", [](const Circuit& c) { return c.gates.size(); })
        .def("two_qubit_count", &Circuit::two_qubit_count)
        .def("two_qubit_depth", &two_qubit_depth)
        .def("is_lnn", [](const Circuit& c) { return validate_layout(c, Layout::LNN); })
        .def("gates", [](const Circuit& c) {
            std::vector<std::string> out;
            for (const Gate& g : c.gates) out.push_back(g.str());
            return out;
        })
        .def("__str__", &Circuit::str)
        .def("__eq__", [](const Circuit& a, const Circuit& b) { return a == b; });

    py::class_<Tableau>(m, "Tableau")
        .def(py::init<int>(), py::arg("n"))
        .def_static("of", &circuit_to_tableau, py::arg("circuit"))
        .def_static("random", &random_clifford, py::arg("n"), py::arg("seed"))
        .def_property_readonly("n", &Tableau::n)
        .def("is_identity", &Tableau::is_identity)
        .def("dump", &Tableau::dump)
        .def("__eq__", [](const Tableau& a, const Tableau& b) { return tableau_equal(a, b); });

    py::class_<StagedForm>(m, "StagedForm")
        .def_readonly("n", &StagedForm::n)
        .def("circuit", [](const StagedForm& f) { return f.circuit(); })
        .def("is_eleven_stage", &StagedForm::is_eleven_stage)
        .def("is_eight_stage", &StagedForm::is_eight_stage)
        .def("non_identity_stages", &StagedForm::non_identity_stages)
        .def("stage_kinds", [](const StagedForm& f) {
            std::vector<std::string> out;
            for (const Stage& s : f.stages) out.push_back(s.str().substr(0, s.str().find(':')));
            return out;
        })
        .def("__str__", &StagedForm::str);

    m.def("equal", [](const Circuit& a, const Circuit& b) {
        return tableau_equal(circuit_to_tableau(a), circuit_to_tableau(b));
    }, py::arg("a"), py::arg("b"), "Equality up to global phase.");
    m.def("random_circuit", &random_clifford_circuit, py::arg("n"), py::arg("seed"), py::arg("length") = -1);
    m.def("decompose_11", &decompose_11, py::arg("tableau"));
    m.def("fold_to_8", &fold_to_8, py::arg("form"));
    m.def("compile_lnn", &compile_lnn, py::arg("form"));
    m.def("canonicalize", [](const Circuit& c) {
        Canonical r = canonicalize(c);
        return py::make_tuple(r.form, r.lnn);
    }, py::arg("circuit"), "Returns (eight-stage form, LNN circuit).");

    m.def("extract", [](const Circuit& c) {
        Extraction e = extract(c);
        return py::make_tuple(std::map<Mask, int>(e.p.terms.begin(), e.p.terms.end()), e.g.rows);
    }, py::arg("circuit"), "Phase polynomial {mask: coeff} and linear rows of an H-free circuit.");
    m.def("fold", [](int n, const std::map<Mask, int>& terms) {
        PhasePolynomial f = fold(poly_from_dict(n, terms));
        return std::map<Mask, int>(f.terms.begin(), f.terms.end());
    }, py::arg("n"), py::arg("terms"));
    m.def("reexpress", [](int n, const std::map<Mask, int>& terms, const std::vector<Mask>& rows,
                          const std::string& order) {
        return reexpress(poly_from_dict(n, terms), LinearMatrix(n, rows), parse_order(order));
    }, py::arg("n"), py::arg("terms"), py::arg("rows"), py::arg("order") = "pczc");

    m.def("synth_cnot", [](const std::vector<Mask>& rows, bool lnn) {
        LinearMatrix g(static_cast<int>(rows.size()), rows);
        return synth_cnot(g, lnn ? LinearBackend::LNN : LinearBackend::Gauss);
    }, py::arg("rows"), py::arg("lnn") = false);
    m.def("synth_cz", [](int n, const std::vector<std::pair<int, int>>& edges, bool optimized) {
        CZLayer l(n, edges);
        return optimized ? synth_cz_optimized(l) : synth_cz_plain(l);
    }, py::arg("n"), py::arg("edges"), py::arg("optimized") = true);
    m.def("synth_czhat_lnn", [](int n, const std::map<Mask, int>& terms_over_x) {
        return synth_czhat_lnn(to_prefix_basis(poly_from_dict(n, terms_over_x)));
    }, py::arg("n"), py::arg("terms"), "Reversal with a diagonal given over the input variables.");
    m.def("interval_schedule", [](int n, int t) {
        std::vector<std::pair<int, int>> out;
        for (auto l : interval_schedule(n, t)) out.emplace_back(l.j, l.k);
        return out;
    }, py::arg("n"), py::arg("t"));

    m.def("table1_csv", [](int max_n, int threads) { return table1_csv(table1_report(max_n, threads)); },
          py::arg("max_n") = 5, py::arg("threads") = 1);
}
