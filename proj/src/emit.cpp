#include "bowlab/emit.hpp"

#include <algorithm>
#include <sstream>

namespace bowlab {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed << v;
    std::string s = os.str();
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s.empty() ? "0" : s;
}

struct BranePositions {
    // brane p (1-based) sits at x = 3p; the D3 line is y = 0
    static double x(int p) { return 3.0 * p; }
};

void tie_arcs(const BraneDiagram& d, const TieDiagram& td,
              std::vector<std::tuple<double, double, bool>>& arcs) {
    for (const auto& [i, j] : td.ties) {
        int vp = d.ns5_position(i), up = d.d5_position(j);
        bool above = vp < up;  // NS5 on the left: arc above the brane line
        double xa = BranePositions::x(std::min(vp, up));
        double xb = BranePositions::x(std::max(vp, up));
        arcs.push_back({xa, xb, above});
    }
    std::sort(arcs.begin(), arcs.end());
}

}  // namespace

std::string emit_tie_diagram(const BraneDiagram& d, const TieDiagram& td, EmitFormat fmt) {
    std::vector<std::tuple<double, double, bool>> arcs;
    tie_arcs(d, td, arcs);
    int nb = d.brane_count();
    double x0 = BranePositions::x(1) - 1.5, x1 = BranePositions::x(nb) + 1.5;
    std::ostringstream os;
    if (fmt == EmitFormat::TikZ) {
        os << "\\begin{tikzpicture}[scale=.4]\n";
        os << "\\draw[thick] (" << num(x0) << ",0) -- (" << num(x1) << ",0);\n";
        for (int p = 1; p <= nb; ++p) {
            double x = BranePositions::x(p);
            if (d.branes[p - 1] == Brane::NS5)
                os << "\\draw[thick,red] (" << num(x - 0.5) << ",-1) -- (" << num(x + 0.5) << ",1);\n";
            else
                os << "\\draw[thick,blue] (" << num(x + 0.5) << ",-1) -- (" << num(x - 0.5) << ",1);\n";
            if (p < nb)
                os << "\\node[above] at (" << num(x + 1.5) << ",0) {$" << d.d3[p] << "$};\n";
        }
        for (const auto& [xa, xb, above] : arcs) {
            double y = above ? 1.2 : -1.2;
            double out = above ? 45 : -45, in = above ? 135 : -135;
            os << "\\draw[dashed] (" << num(xa) << "," << num(y) << ") to[out=" << num(out)
               << ",in=" << num(in) << "] (" << num(xb) << "," << num(y) << ");\n";
        }
        os << "\\end{tikzpicture}\n";
    } else {
        double w = x1 - x0 + 2, h = 14;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(x0 - 1) << " -7 "
           << num(w) << " " << num(h) << "\">\n";
        os << "<line x1=\"" << num(x0) << "\" y1=\"0\" x2=\"" << num(x1)
           << "\" y2=\"0\" stroke=\"black\" stroke-width=\"0.15\"/>\n";
        for (int p = 1; p <= nb; ++p) {
            double x = BranePositions::x(p);
            bool ns5 = d.branes[p - 1] == Brane::NS5;
            double dx = ns5 ? 0.5 : -0.5;
            os << "<line x1=\"" << num(x - dx) << "\" y1=\"1\" x2=\"" << num(x + dx)
               << "\" y2=\"-1\" stroke=\"" << (ns5 ? "red" : "blue")
               << "\" stroke-width=\"0.15\"/>\n";
            if (p < nb)
                os << "<text x=\"" << num(x + 1.5) << "\" y=\"-0.4\" font-size=\"1\" "
                   << "text-anchor=\"middle\">" << d.d3[p] << "</text>\n";
        }
        for (const auto& [xa, xb, above] : arcs) {
            double y = above ? -1.2 : 1.2;  // svg y grows downward
            double cy = above ? y - 0.25 * (xb - xa) : y + 0.25 * (xb - xa);
            os << "<path d=\"M " << num(xa) << " " << num(y) << " Q " << num((xa + xb) / 2) << " "
               << num(cy) << " " << num(xb) << " " << num(y)
               << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.1\" "
               << "stroke-dasharray=\"0.4 0.3\"/>\n";
        }
        os << "</svg>\n";
    }
    return os.str();
}

std::string emit_butterflies(const BraneDiagram& d, const TieDiagram& td, EmitFormat fmt) {
    std::vector<Butterfly> bs = build_butterfly(td, d);
    std::ostringstream os;
    bool tikz = fmt == EmitFormat::TikZ;
    if (!tikz)
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2 -40 80 80\">\n";
    double yoff = 0;
    for (const auto& b : bs) {
        if (tikz) os << "\\begin{tikzpicture}[scale=.5]\n";
        for (const auto& col : b.columns) {
            for (int l = col.top; l > col.top - col.count; --l) {
                double x = col.d3 * 2.0, y = l + (tikz ? 0 : yoff);
                if (tikz)
                    os << "\\fill (" << num(x) << "," << num(y) << ") circle[radius=.06];\n";
                else
                    os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(-y) << "\" r=\"0.15\"/>\n";
            }
        }
        for (const auto& a : b.arrows) {
            double x1 = a.from_d3 * 2.0, y1 = a.from_level + (tikz ? 0 : yoff);
            double x2 = a.to_d3 * 2.0, y2 = a.to_level + (tikz ? 0 : yoff);
            const char* color = a.kind == Butterfly::ArrowKind::A   ? "blue"
                                : a.kind == Butterfly::ArrowKind::B ? "black"
                                : a.kind == Butterfly::ArrowKind::C ? "magenta"
                                                                    : "red";
            if (tikz)
                os << "\\draw[->," << color << "] (" << num(x1) << "," << num(y1) << ") -- ("
                   << num(x2) << "," << num(y2) << ");\n";
            else
                os << "<line x1=\"" << num(x1) << "\" y1=\"" << num(-y1) << "\" x2=\"" << num(x2)
                   << "\" y2=\"" << num(-y2) << "\" stroke=\"" << color
                   << "\" stroke-width=\"0.08\"/>\n";
        }
        if (b.has_a_dot) {
            double x = b.a_d3 * 2.0 + 0.6, y = b.a_level + 1.2 + (tikz ? 0 : yoff);
            if (tikz)
                os << "\\draw (" << num(x) << "," << num(y) << ") circle[radius=.12];\n";
            else
                os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(-y)
                   << "\" r=\"0.15\" fill=\"none\" stroke=\"green\" stroke-width=\"0.06\"/>\n";
        }
        if (tikz) os << "\\end{tikzpicture}\n";
        yoff -= 12;
    }
    if (!tikz) os << "</svg>\n";
    return os.str();
}

std::string emit_gkm_graph(const CurveGraph& g, EmitFormat fmt) {
    FixedOrder ord = order_and_slope(g);
    // layer = longest chain below the vertex
    std::vector<int> layer(ord.n, 0);
    for (int rounds = 0; rounds < ord.n; ++rounds)
        for (const auto& e : g.edges) {
            int lo = ord.lt(e.a, e.b) ? e.a : e.b;
            int hi = ord.lt(e.a, e.b) ? e.b : e.a;
            layer[hi] = std::max(layer[hi], layer[lo] + 1);
        }
    std::vector<int> within(ord.n, 0);
    std::vector<int> used;
    used.assign(ord.n + 1, 0);
    for (int v = 0; v < ord.n; ++v) within[v] = used[layer[v]]++;
    auto pos = [&](int v) {
        return std::make_pair(3.0 * within[v] - 1.5 * (used[layer[v]] - 1), 3.0 * layer[v]);
    };
    auto wlabel = [](const CurveWeight& w) {
        std::string s = "u" + std::to_string(w.nu) + "/u" + std::to_string(w.du);
        if (w.hpow == 1) s += " h";
        else if (w.hpow != 0) s += " h^" + std::to_string(w.hpow);
        return s;
    };
    std::ostringstream os;
    if (fmt == EmitFormat::TikZ) {
        os << "\\begin{tikzpicture}[scale=.8]\n";
        for (const auto& e : g.edges) {
            auto [xa, ya] = pos(e.a);
            auto [xb, yb] = pos(e.b);
            os << "\\draw (" << num(xa) << "," << num(ya) << ") -- (" << num(xb) << "," << num(yb)
               << ");\n";
            os << "\\node[font=\\tiny] at (" << num(0.75 * xa + 0.25 * xb) << ","
               << num(0.75 * ya + 0.25 * yb + 0.25) << ") {$" << wlabel(e.wa) << "$};\n";
            os << "\\node[font=\\tiny] at (" << num(0.25 * xa + 0.75 * xb) << ","
               << num(0.25 * ya + 0.75 * yb + 0.25) << ") {$" << wlabel(e.wb) << "$};\n";
        }
        for (int v = 0; v < ord.n; ++v) {
            auto [x, y] = pos(v);
            os << "\\node[draw,circle,fill=white,inner sep=1pt] at (" << num(x) << "," << num(y)
               << ") {" << (v + 1) << "};\n";
        }
        os << "\\end{tikzpicture}\n";
    } else {
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-8 -"
           << num(3.0 * ord.n + 2) << " 20 " << num(3.0 * ord.n + 4) << "\">\n";
        for (const auto& e : g.edges) {
            auto [xa, ya] = pos(e.a);
            auto [xb, yb] = pos(e.b);
            os << "<line x1=\"" << num(xa) << "\" y1=\"" << num(-ya) << "\" x2=\"" << num(xb)
               << "\" y2=\"" << num(-yb) << "\" stroke=\"black\" stroke-width=\"0.06\"/>\n";
            os << "<text x=\"" << num(0.75 * xa + 0.25 * xb) << "\" y=\""
               << num(-(0.75 * ya + 0.25 * yb + 0.3)) << "\" font-size=\"0.5\">" << wlabel(e.wa)
               << "</text>\n";
            os << "<text x=\"" << num(0.25 * xa + 0.75 * xb) << "\" y=\""
               << num(-(0.25 * ya + 0.75 * yb + 0.3)) << "\" font-size=\"0.5\">" << wlabel(e.wb)
               << "</text>\n";
        }
        for (int v = 0; v < ord.n; ++v) {
            auto [x, y] = pos(v);
            os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(-y)
               << "\" r=\"0.5\" fill=\"white\" stroke=\"black\" stroke-width=\"0.06\"/>\n";
            os << "<text x=\"" << num(x) << "\" y=\"" << num(-y + 0.2)
               << "\" font-size=\"0.6\" text-anchor=\"middle\">" << (v + 1) << "</text>\n";
        }
        os << "</svg>\n";
    }
    return os.str();
}

}  // namespace bowlab
