#include "bowlab/io.hpp"

#include <fstream>

namespace bowlab {

Json diagram_to_json(const BraneDiagram& d) {
    Json j;
    j["branes"] = Json::array();
    for (Brane b : d.branes) j["branes"].push_back(b == Brane::NS5 ? "NS5" : "D5");
    j["d3"] = d.d3;
    return j;
}

BraneDiagram diagram_from_json(const Json& j) {
    BraneDiagram d;
    for (const auto& b : j.at("branes")) {
        std::string s = b.get<std::string>();
        if (s == "NS5") d.branes.push_back(Brane::NS5);
        else if (s == "D5") d.branes.push_back(Brane::D5);
        else throw UsageError("unknown brane kind: " + s);
    }
    d.d3 = j.at("d3").get<std::vector<int>>();
    if (d.d3.size() != d.branes.size() + 1 || d.d3.front() != 0 || d.d3.back() != 0)
        throw UsageError("inconsistent d3 vector");
    return d;
}

Json margins_to_json(const MarginData& md) {
    Json j;
    j["m"] = md.m;
    j["n"] = md.n;
    j["r"] = md.r;
    j["c"] = md.c;
    j["path"] = md.path;
    return j;
}

MarginData margins_from_json(const Json& j) {
    MarginData md;
    md.m = j.at("m").get<int>();
    md.n = j.at("n").get<int>();
    md.r = j.at("r").get<std::vector<int>>();
    md.c = j.at("c").get<std::vector<int>>();
    md.path = j.at("path").get<std::vector<int>>();
    return md;
}

Json bct_to_json(const BCT& t, const MarginData& md) {
    Json j;
    j["r"] = md.r;
    j["c"] = md.c;
    j["path"] = md.path;
    j["rows"] = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (int8_t x : row) r.push_back(static_cast<int>(x));
        j["rows"].push_back(r);
    }
    return j;
}

BCT bct_from_json(const Json& j) {
    BCT t;
    const Json& rows = j.contains("rows") ? j.at("rows") : j;
    for (const auto& row : rows) {
        std::vector<int8_t> r;
        for (const auto& x : row) {
            int v = x.get<int>();
            if (v != 0 && v != 1) throw UsageError("BCT entries must be 0 or 1");
            r.push_back(static_cast<int8_t>(v));
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

Json tie_to_json(const TieDiagram& td) {
    Json j;
    j["ties"] = Json::array();
    for (const auto& [i, k] : td.ties) j["ties"].push_back(Json::array({i, k}));
    return j;
}

TieDiagram tie_from_json(const Json& j) {
    TieDiagram td;
    for (const auto& pair : j.at("ties")) td.ties.insert({pair.at(0).get<int>(), pair.at(1).get<int>()});
    return td;
}

Json poly_to_json(const LaurentPoly& p) {
    Json j;
    j["vars"] = p.space()->var_names();
    j["terms"] = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exp"] = e;
        t["num"] = c.num_string();
        t["den"] = c.den_string();
        j["terms"].push_back(t);
    }
    return j;
}

LaurentPoly poly_from_json(const Json& j, const SpacePtr& space) {
    LaurentPoly p(space);
    for (const auto& t : j.at("terms")) {
        ExpVec e = t.at("exp").get<ExpVec>();
        p.add_term(e, Scalar::from_decimal_strings(t.at("num").get<std::string>(),
                                                   t.at("den").get<std::string>()));
    }
    return p;
}

Json restriction_to_json(const BCT& f, const MarginData& md, const RestrictionEntry& e) {
    Json j;
    j["fixed_point"] = bct_to_json(f, md);
    j["bundles"] = Json::array();
    for (const auto& bundle : e.bundles) {
        Json b = Json::array();
        for (const auto& w : bundle) b.push_back(Json{{"u", w.u_index}, {"h", w.h_power}});
        j["bundles"].push_back(b);
    }
    return j;
}

Json butterfly_to_json(const Butterfly& b) {
    Json j;
    j["d5"] = b.d5;
    j["columns"] = Json::array();
    for (const auto& c : b.columns)
        j["columns"].push_back(Json{{"d3", c.d3}, {"top", c.top}, {"count", c.count}});
    j["arrows"] = Json::array();
    for (const auto& a : b.arrows) {
        const char* kind = a.kind == Butterfly::ArrowKind::A   ? "A"
                           : a.kind == Butterfly::ArrowKind::B ? "B"
                           : a.kind == Butterfly::ArrowKind::C ? "C"
                                                               : "D";
        j["arrows"].push_back(Json{{"kind", kind},
                                   {"from", Json::array({a.from_d3, a.from_level})},
                                   {"to", Json::array({a.to_d3, a.to_level})}});
    }
    if (b.has_a_dot) j["a_dot"] = Json::array({b.a_d3, b.a_level});
    if (b.has_b_dot) j["b_dot"] = Json::array({b.b_d3, b.b_level});
    return j;
}

Json envelope_table_to_json(const EnvelopeTable& t, const MarginData& md) {
    Json j;
    j["fixed_points"] = Json::array();
    for (const auto& f : t.fixed_points) j["fixed_points"].push_back(bct_to_json(f, md));
    j["entries"] = Json::array();
    for (const auto& row : t.entries) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(poly_to_json(e));
        j["entries"].push_back(r);
    }
    return j;
}

Json curve_graph_to_json(const CurveGraph& g, const MarginData& md) {
    Json j;
    j["vertices"] = Json::array();
    for (const auto& v : g.vertices) j["vertices"].push_back(bct_to_json(v, md));
    j["edges"] = Json::array();
    for (const auto& e : g.edges) {
        Json je;
        je["a"] = e.a;
        je["b"] = e.b;
        je["wa"] = Json{{"u", Json::array({e.wa.nu, e.wa.du})}, {"h", e.wa.hpow}};
        je["wb"] = Json{{"u", Json::array({e.wb.nu, e.wb.du})}, {"h", e.wb.hpow}};
        j["edges"].push_back(je);
    }
    return j;
}

CurveGraph curve_graph_from_json(const Json& j) {
    CurveGraph g;
    for (const auto& v : j.at("vertices")) g.vertices.push_back(bct_from_json(v));
    for (const auto& e : j.at("edges")) {
        CurveGraph::Edge edge;
        edge.a = e.at("a").get<int>();
        edge.b = e.at("b").get<int>();
        edge.wa = {e.at("wa").at("u").at(0).get<int>(), e.at("wa").at("u").at(1).get<int>(),
                   e.at("wa").at("h").get<int>()};
        edge.wb = {e.at("wb").at("u").at(0).get<int>(), e.at("wb").at("u").at(1).get<int>(),
                   e.at("wb").at("h").get<int>()};
        g.edges.push_back(edge);
    }
    return g;
}

Json theta_to_json(const ThetaProduct& t) {
    Json j;
    j["sign"] = t.sign;
    j["thetas"] = Json::array();
    for (const auto& e : t.thetas) j["thetas"].push_back(Json{{"exp", e}});
    return j;
}

Json elliptic_table_to_json(const EllipticTable& t) {
    Json j;
    j["u_count"] = t.space->u_count();
    j["v_count"] = t.space->kahler_count();
    j["labels"] = t.labels;
    j["entries"] = Json::array();
    for (const auto& row : t.entries) {
        Json r = Json::array();
        for (const auto& e : row) {
            if (!e) r.push_back(0);
            else r.push_back(theta_to_json(*e));
        }
        j["entries"].push_back(r);
    }
    return j;
}

EllipticTable elliptic_table_from_json(const Json& j) {
    EllipticTable t;
    int n = j.at("u_count").get<int>();
    int m = j.at("v_count").get<int>();
    t.space = VarSpace::make(n, m, {}, false);
    if (j.contains("labels")) t.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& row : j.at("entries")) {
        std::vector<std::optional<ThetaProduct>> r;
        for (const auto& e : row) {
            if (e.is_number() && e.get<int>() == 0) {
                r.push_back(std::nullopt);
            } else {
                ThetaProduct tp;
                tp.sign = e.at("sign").get<int>();
                for (const auto& th : e.at("thetas")) tp.thetas.push_back(th.at("exp").get<ExpVec>());
                r.push_back(theta_canonicalize(t.space, std::move(tp)));
            }
        }
        t.entries.push_back(std::move(r));
    }
    return t;
}

TableFixture table_fixture_from_json(const Json& j) {
    TableFixture fx;
    fx.diagram = parse_diagram(j.at("diagram").get<std::string>());
    fx.space = ktheory_space(fx.diagram);
    for (const auto& rows : j.at("points")) fx.points.push_back(bct_from_json(rows));
    for (const auto& row : j.at("entries")) {
        std::vector<LaurentPoly> out_row;
        for (const auto& e : row) {
            if (e.is_number() && e.get<int>() == 0) {
                out_row.push_back(LaurentPoly::zero(fx.space));
                continue;
            }
            LaurentPoly p = LaurentPoly::constant(fx.space, Scalar(e.at("coeff").get<long>()));
            int hpow = e.value("hpow", 0);
            if (hpow != 0) {
                ExpVec he(fx.space->size(), 0);
                he[fx.space->h_index()] = hpow;
                p *= LaurentPoly::monomial(fx.space, he, Scalar(1));
            }
            if (e.contains("factors")) {
                for (const auto& f : e.at("factors")) {
                    LinearForm form(fx.space);
                    form.add_coeff(fx.space->u_index(f.at("p").get<int>()), Scalar(1));
                    form.add_coeff(fx.space->u_index(f.at("m").get<int>()), Scalar(-1));
                    int k = f.value("h", 0);
                    if (k != 0) form.add_coeff(fx.space->h_index(), Scalar(k));
                    p *= form.to_poly();
                }
            }
            out_row.push_back(std::move(p));
        }
        fx.entries.push_back(std::move(out_row));
    }
    return fx;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace bowlab
