#include "bowlab/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "bowlab/emit.hpp"
#include "bowlab/io.hpp"

namespace bowlab {

namespace {

struct Common {
    std::string diagram_text;
    std::string json_path;
    std::string format = "text";
    int threads = 0;  // 0: BOWLAB_THREADS or 1
    int seed_direction = 0;
    std::string graph_path;
    std::string fixed_point;  // index or path to a BCT json
    bool count_only = false;

    BraneDiagram diagram() const {
        if (!json_path.empty()) return diagram_from_json(read_json_file(json_path));
        if (diagram_text.empty()) throw UsageError("no diagram given");
        return parse_diagram(diagram_text);
    }
    int thread_count() const {
        if (threads > 0) return threads;
        if (const char* env = std::getenv("BOWLAB_THREADS")) {
            int t = std::atoi(env);
            if (t > 0) return t;
        }
        return 1;
    }
};

void add_common(CLI::App* cmd, Common& c, bool needs_diagram = true) {
    if (needs_diagram) {
        cmd->add_option("diagram", c.diagram_text, "brane diagram code, e.g. \"/1\\1\\1/\" ('|' = '\\')");
        cmd->add_option("--json", c.json_path, "read the diagram from a JSON file");
    }
    cmd->add_option("--format", c.format, "output format: text|json|tikz|svg")
        ->check(CLI::IsMember({"text", "json", "tikz", "svg"}));
    cmd->add_option("--threads", c.threads, "worker threads (default BOWLAB_THREADS or 1)");
    cmd->add_option("--seed-direction", c.seed_direction,
                    "index of the documented tau prime sequence for limit evaluation");
    cmd->add_option("--graph", c.graph_path, "curve-graph fixture JSON");
    cmd->add_option("--fixed-point", c.fixed_point, "fixed point index (1-based) or BCT JSON path");
    cmd->add_flag("--count", c.count_only, "only print the count");
}

BCT pick_fixed_point(const Common& c, const BraneDiagram& d, const std::vector<BCT>& points) {
    if (c.fixed_point.empty()) throw UsageError("--fixed-point required");
    if (c.fixed_point.find_first_not_of("0123456789") == std::string::npos) {
        int idx = std::atoi(c.fixed_point.c_str());
        if (idx < 1 || idx > static_cast<int>(points.size()))
            throw UsageError("fixed point index out of range");
        return points[idx - 1];
    }
    BCT t = bct_from_json(read_json_file(c.fixed_point));
    if (fixed_point_index(points, t) < 0) throw DomainError("not a fixed point of this diagram");
    return t;
}

std::string poly_text(const LaurentPoly& p) { return p.str(); }

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run_impl(args, out, err);
    } catch (const ConjectureFailure& e) {
        Json j{{"error", e.what()}, {"kind", "conjecture-falsification"}};
        err << j.dump() << "\n";
        return 3;
    } catch (const ParseError& e) {
        Json j{{"error", e.what()}, {"kind", "parse"}, {"offset", e.offset}};
        err << j.dump() << "\n";
        return 2;
    } catch (const UsageError& e) {
        Json j{{"error", e.what()}, {"kind", "usage"}};
        err << j.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json j{{"error", e.what()}, {"kind", "domain"}};
        err << j.dump() << "\n";
        return 1;
    }
}

namespace {

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bowlab: the combinatorial calculus of Cherkis bow varieties"};
    app.require_subcommand(1);

    Common c;
    std::string quiver_v, quiver_w;
    int position = -1;

    auto* info = app.add_subcommand("info", "diagram summary: margins, dimension, fixed points");
    add_common(info, c);
    auto* validate = app.add_subcommand("validate", "Gale-Ryser feasibility of the margins");
    add_common(validate, c);
    auto* fixedpoints = app.add_subcommand("fixedpoints", "enumerate torus fixed points (BCTs)");
    add_common(fixedpoints, c);
    auto* tie = app.add_subcommand("tie", "tie diagram of a fixed point");
    add_common(tie, c);
    auto* butterfly = app.add_subcommand("butterfly", "butterfly diagrams of a fixed point");
    add_common(butterfly, c);
    auto* restrict_cmd = app.add_subcommand("restrict", "K-theory restriction of the tautological bundles");
    add_common(restrict_cmd, c);
    auto* tangent = app.add_subcommand("tangent", "tangent expression, or tangent weights at a fixed point");
    add_common(tangent, c);
    auto* mirror = app.add_subcommand("mirror", "3d mirror dual diagram");
    add_common(mirror, c);
    auto* hw = app.add_subcommand("hw", "Hanany-Witten transition at --pos");
    add_common(hw, c);
    hw->add_option("--pos", position, "0-based index of the left brane of the pair")->required();
    auto* tu = app.add_subcommand("tu", "(TU) transition at --pos");
    add_common(tu, c);
    tu->add_option("--pos", position, "0-based index of the left brane of the pair")->required();
    auto* tv = app.add_subcommand("tv", "(TV) transition at --pos");
    add_common(tv, c);
    tv->add_option("--pos", position, "0-based index of the left brane of the pair")->required();
    auto* separated = app.add_subcommand("separated", "the HW-equivalent separated diagram");
    add_common(separated, c);
    auto* quiver = app.add_subcommand("quiver", "bow diagram and margins of a quiver Q(v,w)");
    quiver->add_option("--v", quiver_v, "dimension vector, comma separated")->required();
    quiver->add_option("--w", quiver_w, "framing vector, comma separated")->required();
    add_common(quiver, c, false);
    auto* chi = app.add_subcommand("chi", "fixed point count of Naka(Q(v,w))");
    chi->add_option("--v", quiver_v, "dimension vector, comma separated")->required();
    chi->add_option("--w", quiver_w, "framing vector, comma separated")->required();
    add_common(chi, c, false);
    auto* envelope = app.add_subcommand("envelope", "table of conjectured stable envelope restrictions");
    add_common(envelope, c);
    auto* axioms = app.add_subcommand("axioms", "check the stable envelope axioms");
    add_common(axioms, c);
    auto* curves = app.add_subcommand("curves", "candidate invariant curve edges (2x2 moves)");
    add_common(curves, c);
    auto* elliptic = app.add_subcommand("elliptic-check", "verify the 3d-mirror identity on two tables");
    std::vector<std::string> table_paths;
    elliptic->add_option("--tables", table_paths, "two elliptic table JSON files")->expected(2);
    add_common(elliptic, c, false);
    auto* emit = app.add_subcommand("emit", "TikZ/SVG pictures of ties, butterflies or graphs");
    std::string emit_kind;
    emit->add_option("--kind", emit_kind, "tie|butterfly|gkm")->required();
    add_common(emit, c);

    std::vector<std::string> rev(args.begin(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help();
            return 0;
        }
        err << Json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
        return 2;
    }

    auto parse_ints = [](const std::string& s) {
        std::vector<int> out_v;
        std::string cur;
        for (char ch : s + ",") {
            if (ch == ',') {
                if (!cur.empty()) out_v.push_back(std::atoi(cur.c_str()));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        return out_v;
    };

    if (info->parsed()) {
        BraneDiagram d = c.diagram();
        MarginData md = charges_and_margins(d);
        long fp = count_fixed_points(md);
        if (c.format == "json") {
            Json j;
            j["diagram"] = print_diagram(d);
            j["margins"] = margins_to_json(md);
            j["valid"] = validate_margins(md);
            j["dimension"] = dimension(d);
            j["fixed_points"] = fp;
            auto cls = classify(d);
            j["balanced"] = cls.balanced;
            j["cobalanced"] = cls.cobalanced;
            j["hw_balanced"] = cls.hw_balanced;
            j["hw_cobalanced"] = cls.hw_cobalanced;
            out << j.dump(2) << "\n";
        } else {
            out << "diagram: " << print_diagram(d) << "\n";
            out << "m=" << md.m << ", n=" << md.n << "\n";
            out << "r=(";
            for (size_t i = 0; i < md.r.size(); ++i) out << (i ? "," : "") << md.r[i];
            out << "), c=(";
            for (size_t i = 0; i < md.c.size(); ++i) out << (i ? "," : "") << md.c[i];
            out << ")\n";
            out << "dim=" << dimension(d) << "\n";
            out << "fixed points=" << fp << "\n";
        }
        return 0;
    }
    if (validate->parsed()) {
        BraneDiagram d = c.diagram();
        bool ok = validate_margins(charges_and_margins(d));
        if (c.format == "json") out << Json{{"valid", ok}}.dump() << "\n";
        else out << (ok ? "valid" : "invalid") << "\n";
        return ok ? 0 : 1;
    }
    if (fixedpoints->parsed()) {
        BraneDiagram d = c.diagram();
        MarginData md = charges_and_margins(d);
        if (c.count_only) {
            out << count_fixed_points(md) << "\n";
            return 0;
        }
        auto points = enumerate_fixed_points(md);
        if (c.format == "json") {
            Json j = Json::array();
            for (const auto& t : points) j.push_back(bct_to_json(t, md));
            out << j.dump(2) << "\n";
        } else {
            for (size_t k = 0; k < points.size(); ++k) {
                out << "# " << (k + 1) << "\n";
                for (const auto& row : points[k].rows) {
                    for (int8_t x : row) out << static_cast<int>(x);
                    out << "\n";
                }
            }
        }
        return 0;
    }
    if (tie->parsed() || butterfly->parsed() || restrict_cmd->parsed()) {
        BraneDiagram d = c.diagram();
        MarginData md = charges_and_margins(d);
        auto points = enumerate_fixed_points(md);
        BCT f = pick_fixed_point(c, d, points);
        TieDiagram td = bct_to_tie(f, d);
        if (tie->parsed()) {
            if (c.format == "tikz") out << emit_tie_diagram(d, td, EmitFormat::TikZ);
            else if (c.format == "svg") out << emit_tie_diagram(d, td, EmitFormat::Svg);
            else out << tie_to_json(td).dump(2) << "\n";
            return 0;
        }
        if (butterfly->parsed()) {
            if (c.format == "tikz") out << emit_butterflies(d, td, EmitFormat::TikZ);
            else if (c.format == "svg") out << emit_butterflies(d, td, EmitFormat::Svg);
            else {
                Json j = Json::array();
                for (const auto& b : build_butterfly(td, d)) j.push_back(butterfly_to_json(b));
                out << j.dump(2) << "\n";
            }
            return 0;
        }
        RestrictionEntry e = loc_K(d, td);
        out << restriction_to_json(f, md, e).dump(2) << "\n";
        return 0;
    }
    if (tangent->parsed()) {
        BraneDiagram d = c.diagram();
        if (c.fixed_point.empty()) {
            TangentExpr te = tangent_expression(d);
            Json j = Json::array();
            for (const auto& t : te.terms) {
                Json jt;
                jt["src"] = t.src.framing ? "C_u" + std::to_string(t.src.index)
                                          : "xi" + std::to_string(t.src.index);
                jt["dst"] = t.dst.framing ? "C_u" + std::to_string(t.dst.index)
                                          : "xi" + std::to_string(t.dst.index);
                jt["h"] = t.h_power;
                jt["coeff"] = t.coeff;
                j.push_back(jt);
            }
            out << j.dump(2) << "\n";
            return 0;
        }
        MarginData md = charges_and_margins(d);
        auto points = enumerate_fixed_points(md);
        BCT f = pick_fixed_point(c, d, points);
        LaurentPoly t = tangent_at(d, f);
        if (c.format == "json") out << poly_to_json(t).dump(2) << "\n";
        else out << poly_text(t) << "\n";
        return 0;
    }
    if (mirror->parsed() || hw->parsed() || tu->parsed() || tv->parsed() || separated->parsed()) {
        BraneDiagram d = c.diagram();
        BraneDiagram res;
        if (mirror->parsed()) res = mirror_dual(d);
        else if (hw->parsed()) res = hw_transition(d, position);
        else if (tu->parsed() || tv->parsed()) {
            res = tu_tv_transition(d, position);
            bool want_d5 = tu->parsed();
            if ((d.branes.at(position) == Brane::D5) != want_d5)
                throw UsageError(want_d5 ? "tu needs a D5 pair" : "tv needs an NS5 pair");
        } else {
            SeparatedForm sf = separated_form(d);
            if (c.format == "json") {
                Json j;
                j["diagram"] = print_diagram(sf.diagram);
                j["moves"] = sf.moves;
                out << j.dump(2) << "\n";
            } else {
                out << print_diagram(sf.diagram) << "\n";
            }
            return 0;
        }
        if (c.format == "json") out << diagram_to_json(res).dump(2) << "\n";
        else out << print_diagram(res) << "\n";
        return 0;
    }
    if (quiver->parsed() || chi->parsed()) {
        QuiverSpec q{parse_ints(quiver_v), parse_ints(quiver_w)};
        if (chi->parsed()) {
            out << chi_quiver(q) << "\n";
            return 0;
        }
        BraneDiagram d = quiver_to_diagram(q);
        auto [r, cc] = quiver_margins(q);
        if (c.format == "json") {
            Json j;
            j["diagram"] = print_diagram(d);
            j["r"] = r;
            j["c"] = cc;
            out << j.dump(2) << "\n";
        } else {
            out << print_diagram(d) << "\n";
        }
        return 0;
    }
    if (envelope->parsed()) {
        BraneDiagram d = c.diagram();
        EnvelopeOptions opts;
        opts.threads = c.thread_count();
        opts.seed_direction = c.seed_direction;
        EnvelopeTable table = envelope_table(d, opts);
        MarginData md = charges_and_margins(d);
        if (c.format == "json") {
            out << envelope_table_to_json(table, md).dump(2) << "\n";
        } else {
            for (size_t i = 0; i < table.entries.size(); ++i) {
                for (size_t j = 0; j < table.entries[i].size(); ++j)
                    out << "(" << (i + 1) << "," << (j + 1)
                        << ") = " << poly_text(table.entries[i][j]) << "\n";
            }
        }
        return 0;
    }
    if (axioms->parsed()) {
        BraneDiagram d = c.diagram();
        EnvelopeOptions opts;
        opts.threads = c.thread_count();
        opts.seed_direction = c.seed_direction;
        EnvelopeTable table = envelope_table(d, opts);
        AxiomReport norm = check_normalization(d, table);
        AxiomReport bdry = check_boundary(d, table);
        Json j;
        j["normalization"] = norm.ok ? "pass" : "fail";
        j["boundary"] = bdry.ok ? "pass" : "fail";
        bool ok = norm.ok && bdry.ok;
        if (!c.graph_path.empty()) {
            CurveGraph g = curve_graph_from_json(read_json_file(c.graph_path));
            AxiomReport sup = check_support(d, table, g);
            j["support"] = sup.ok ? "pass" : "fail";
            for (const auto& f : sup.failures) j["failures"].push_back(f);
            ok = ok && sup.ok;
        } else {
            j["support"] = "not checked";
        }
        for (const auto& f : norm.failures) j["failures"].push_back(f);
        for (const auto& f : bdry.failures) j["failures"].push_back(f);
        out << j.dump(2) << "\n";
        return ok ? 0 : 1;
    }
    if (curves->parsed()) {
        BraneDiagram d = c.diagram();
        auto edges = candidate_curve_edges(d);
        if (c.count_only) {
            out << edges.size() << "\n";
        } else {
            Json j = Json::array();
            for (const auto& [a, b] : edges) j.push_back(Json::array({a + 1, b + 1}));
            out << j.dump() << "\n";
        }
        return 0;
    }
    if (elliptic->parsed()) {
        if (table_paths.size() != 2) throw UsageError("elliptic-check needs --tables A.json B.json");
        EllipticTable s = elliptic_table_from_json(read_json_file(table_paths[0]));
        EllipticTable sp = elliptic_table_from_json(read_json_file(table_paths[1]));
        EllipticReport rep = check_3d_identity(s, sp);
        Json j;
        j["ok"] = rep.ok;
        j["mismatches"] = rep.mismatches;
        out << j.dump(2) << "\n";
        return rep.ok ? 0 : 1;
    }
    if (emit->parsed()) {
        EmitFormat fmt = (c.format == "svg") ? EmitFormat::Svg : EmitFormat::TikZ;
        if (emit_kind == "gkm") {
            if (c.graph_path.empty()) throw UsageError("emit --kind gkm needs --graph");
            CurveGraph g = curve_graph_from_json(read_json_file(c.graph_path));
            out << emit_gkm_graph(g, fmt);
            return 0;
        }
        BraneDiagram d = c.diagram();
        MarginData md = charges_and_margins(d);
        auto points = enumerate_fixed_points(md);
        BCT f = pick_fixed_point(c, d, points);
        TieDiagram td = bct_to_tie(f, d);
        if (emit_kind == "tie") out << emit_tie_diagram(d, td, fmt);
        else if (emit_kind == "butterfly") out << emit_butterflies(d, td, fmt);
        else throw UsageError("unknown emit kind: " + emit_kind);
        return 0;
    }
    err << Json{{"error", "no subcommand"}, {"kind", "usage"}}.dump() << "\n";
    return 2;
}

}  // namespace

}  // namespace bowlab
