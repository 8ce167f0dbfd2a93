#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bowlab/emit.hpp"
#include "bowlab/io.hpp"

namespace py = pybind11;
using namespace bowlab;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null:
            return py::none();
        case Json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case Json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float:
            return py::float_(j.get<double>());
        case Json::value_t::string:
            return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            return py::none();
    }
}

BCT bct_from_rows(const std::vector<std::vector<int>>& rows) {
    BCT t;
    for (const auto& r : rows) {
        std::vector<int8_t> row;
        for (int x : r) {
            if (x != 0 && x != 1) throw UsageError("BCT entries must be 0 or 1");
            row.push_back(static_cast<int8_t>(x));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<std::vector<int>> bct_rows(const BCT& t) {
    std::vector<std::vector<int>> rows;
    for (const auto& r : t.rows) rows.emplace_back(r.begin(), r.end());
    return rows;
}

struct PyDiagram {
    BraneDiagram d;

    std::string code() const { return print_diagram(d); }
    py::object margins() const { return json_to_py(margins_to_json(charges_and_margins(d))); }
    bool valid() const { return validate_margins(charges_and_margins(d)); }
    int dim() const { return dimension(d); }
    PyDiagram mirror() const { return {mirror_dual(d)}; }
    PyDiagram hw(int pos) const { return {hw_transition(d, pos)}; }
    PyDiagram tu_tv(int pos) const { return {tu_tv_transition(d, pos)}; }
    std::pair<PyDiagram, std::vector<int>> separated() const {
        SeparatedForm sf = separated_form(d);
        return {{sf.diagram}, sf.moves};
    }
    py::object classify_py() const {
        Classification c = classify(d);
        py::dict out;
        out["balanced"] = c.balanced;
        out["cobalanced"] = c.cobalanced;
        out["hw_balanced"] = c.hw_balanced;
        out["hw_cobalanced"] = c.hw_cobalanced;
        return out;
    }
    long count() const { return count_fixed_points(charges_and_margins(d)); }
    std::vector<std::vector<std::vector<int>>> fixed_points() const {
        std::vector<std::vector<std::vector<int>>> out;
        for (const auto& t : enumerate_fixed_points(charges_and_margins(d)))
            out.push_back(bct_rows(t));
        return out;
    }
    std::vector<std::pair<int, int>> tie(const std::vector<std::vector<int>>& rows) const {
        TieDiagram td = bct_to_tie(bct_from_rows(rows), d);
        return {td.ties.begin(), td.ties.end()};
    }
    py::object butterflies(const std::vector<std::vector<int>>& rows) const {
        TieDiagram td = bct_to_tie(bct_from_rows(rows), d);
        Json out = Json::array();
        for (const auto& b : build_butterfly(td, d)) out.push_back(butterfly_to_json(b));
        return json_to_py(out);
    }
    py::object restriction(const std::vector<std::vector<int>>& rows) const {
        BCT t = bct_from_rows(rows);
        return json_to_py(restriction_to_json(t, charges_and_margins(d), loc_K(d, t)));
    }
    std::string tangent(const std::vector<std::vector<int>>& rows) const {
        return tangent_at(d, bct_from_rows(rows)).str();
    }
    py::object envelope(int threads, int seed_direction) const {
        EnvelopeOptions opts;
        opts.threads = threads;
        opts.seed_direction = seed_direction;
        EnvelopeTable t = envelope_table(d, opts);
        return json_to_py(envelope_table_to_json(t, charges_and_margins(d)));
    }
    std::string restrict_entry(const std::vector<std::vector<int>>& f,
                               const std::vector<std::vector<int>>& fp) const {
        return restrict_w(d, bct_from_rows(f), bct_from_rows(fp)).str();
    }
    py::object axioms(const py::object& graph_path, int threads) const {
        EnvelopeOptions opts;
        opts.threads = threads;
        EnvelopeTable table = envelope_table(d, opts);
        Json out;
        out["normalization"] = check_normalization(d, table).ok;
        out["boundary"] = check_boundary(d, table).ok;
        if (!graph_path.is_none()) {
            CurveGraph g = curve_graph_from_json(read_json_file(graph_path.cast<std::string>()));
            AxiomReport sup = check_support(d, table, g);
            out["support"] = sup.ok;
            out["failures"] = sup.failures;
        }
        return json_to_py(out);
    }
    std::vector<std::pair<int, int>> curves() const { return candidate_curve_edges(d); }
    std::string emit_tie(const std::vector<std::vector<int>>& rows, const std::string& fmt) const {
        TieDiagram td = bct_to_tie(bct_from_rows(rows), d);
        return emit_tie_diagram(d, td, fmt == "svg" ? EmitFormat::Svg : EmitFormat::TikZ);
    }
};

}  // namespace

PYBIND11_MODULE(_bowlab, m) {
    m.doc() = "combinatorics of Cherkis bow varieties: brane diagrams, torus fixed "
              "points, restriction maps and conjectured stable envelopes";

    py::register_exception<ConjectureFailure>(m, "ConjectureFalsified", PyExc_RuntimeError);
    py::register_exception<UsageError>(m, "BowlabUsageError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "BowlabDomainError", PyExc_RuntimeError);
    py::register_exception<IntegrityError>(m, "BowlabIntegrityError", PyExc_RuntimeError);

    py::class_<PyDiagram>(m, "Diagram")
        .def(py::init([](const std::string& code) { return PyDiagram{parse_diagram(code)}; }),
             py::arg("code"))
        .def("__str__", &PyDiagram::code)
        .def("__repr__", [](const PyDiagram& d) { return "Diagram(\"" + d.code() + "\")"; })
        .def("code", &PyDiagram::code)
        .def("margins", &PyDiagram::margins)
        .def("valid", &PyDiagram::valid)
        .def("dimension", &PyDiagram::dim)
        .def("mirror", &PyDiagram::mirror)
        .def("hw", &PyDiagram::hw, py::arg("pos"))
        .def("tu_tv", &PyDiagram::tu_tv, py::arg("pos"))
        .def("separated", &PyDiagram::separated)
        .def("classify", &PyDiagram::classify_py)
        .def("count_fixed_points", &PyDiagram::count)
        .def("fixed_points", &PyDiagram::fixed_points)
        .def("tie", &PyDiagram::tie, py::arg("bct"))
        .def("butterflies", &PyDiagram::butterflies, py::arg("bct"))
        .def("restriction", &PyDiagram::restriction, py::arg("bct"))
        .def("tangent", &PyDiagram::tangent, py::arg("bct"))
        .def("envelope", &PyDiagram::envelope, py::arg("threads") = 1,
             py::arg("seed_direction") = 0)
        .def("restrict", &PyDiagram::restrict_entry, py::arg("f"), py::arg("fp"))
        .def("axioms", &PyDiagram::axioms, py::arg("graph") = py::none(),
             py::arg("threads") = 1)
        .def("candidate_curves", &PyDiagram::curves)
        .def("emit_tie", &PyDiagram::emit_tie, py::arg("bct"), py::arg("format") = "tikz");

    m.def("parse", [](const std::string& code) { return PyDiagram{parse_diagram(code)}; },
          py::arg("code"));
    m.def("gale_ryser", &gale_ryser, py::arg("rows"), py::arg("cols"));
    m.def(
        "quiver_to_diagram",
        [](const std::vector<int>& v, const std::vector<int>& w) {
            return PyDiagram{quiver_to_diagram({v, w})};
        },
        py::arg("v"), py::arg("w"));
    m.def(
        "quiver_margins",
        [](const std::vector<int>& v, const std::vector<int>& w) {
            return quiver_margins({v, w});
        },
        py::arg("v"), py::arg("w"));
    m.def(
        "chi_quiver",
        [](const std::vector<int>& v, const std::vector<int>& w) { return chi_quiver({v, w}); },
        py::arg("v"), py::arg("w"));
    m.def(
        "count_partition_codes",
        [](const std::vector<int>& v, const std::vector<int>& w) {
            return count_partition_codes({v, w});
        },
        py::arg("v"), py::arg("w"));
    m.def(
        "check_quiver_duality",
        [](const std::vector<int>& v, const std::vector<int>& w, const std::vector<int>& vp,
           const std::vector<int>& wp) { return check_quiver_duality({v, w}, {vp, wp}); },
        py::arg("v"), py::arg("w"), py::arg("v_dual"), py::arg("w_dual"));
    m.def(
        "dual_flag_quiver",
        [](const std::vector<int>& lambda) {
            QuiverSpec q = dual_flag_quiver(lambda);
            return std::make_pair(q.v, q.w);
        },
        py::arg("parts"));
    m.def(
        "check_3d_identity",
        [](const std::string& path_a, const std::string& path_b) {
            EllipticTable a = elliptic_table_from_json(read_json_file(path_a));
            EllipticTable b = elliptic_table_from_json(read_json_file(path_b));
            EllipticReport rep = check_3d_identity(a, b);
            py::dict out;
            out["ok"] = rep.ok;
            out["mismatches"] = rep.mismatches;
            return out;
        },
        py::arg("table_a"), py::arg("table_b"));
}
