#pragma once

#include <string>
#include <vector>

#include "bowlab/restriction.hpp"

namespace bowlab {

struct EnvelopeOptions {
    int seed_direction = 0;  // selects the documented prime sequence for tau
    int threads = 1;
};

/// One f-small tangent term coeff * (x/y) * h^hpow, expanded over Grothendieck
/// roots; sides are either a root slot of a bundle or a framing u-variable.
struct FSmallTerm {
    struct Side {
        bool is_root;
        int bundle;  // 1-based interior D3 index (when is_root)
        int slot;    // 1-based root index within the bundle (when is_root)
        int u;       // 1-based D5 index of Loc(side) / of the framing line
        int h;       // h-power of Loc(side); 0 for framings
    };
    Side x, y;  // term is x/y (x the numerator)
    int hpow;
    int coeff;
};

std::vector<FSmallTerm> f_small_terms(const BraneDiagram& d, const BCT& f);

/// Variable space of the envelope formulas: u's, h, all Chern roots, eps.
SpacePtr envelope_space(const BraneDiagram& d);

/// Euler product of the f-small terms as an unexpanded rational expression.
FactoredRational w_tilde(const BraneDiagram& d, const BCT& f);

/// Normalizer N_f = prod over D5 branes of the factorials of the per-D3
/// coverage counts of the ties at that brane.
Scalar envelope_normalizer(const BraneDiagram& d, const BCT& f);

/// The full symmetrized candidate stable envelope (1/N_f) Sym(w_tilde).
/// Materializes all prod d_i! summands; meant for desk-scale diagrams.
std::vector<FactoredRational> w_f(const BraneDiagram& d, const BCT& f);

/// tau direction: the p-th Chern root (global order) gets the
/// (p + 101*seed)-th prime.
long tau_direction(int global_root_position, int seed_direction);

/// Restriction of W_f to the fixed point fp via the eps-shifted substitution
/// x_{i,j} -> loc_H(fp)_{i,j} + eps*tau_{i,j} and the exact limit eps -> 0.
/// Returns a polynomial in u's and h (the cohomology restriction).
LaurentPoly restrict_w(const BraneDiagram& d, const BCT& f, const BCT& fp,
                       const EnvelopeOptions& opts = {}, LimitStats* stats = nullptr);

struct EnvelopeTable {
    std::vector<BCT> fixed_points;                 // canonical enumeration order
    std::vector<std::vector<LaurentPoly>> entries; // entries[f][fp] = Stab(f)|_{fp}
    SpacePtr space;                                // u's and h
    bool limit_path_used = false;                  // some entry needed a genuine limit
};

EnvelopeTable envelope_table(const BraneDiagram& d, const EnvelopeOptions& opts = {});

struct AxiomReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> skipped;
};

AxiomReport check_normalization(const BraneDiagram& d, const EnvelopeTable& table);
AxiomReport check_boundary(const BraneDiagram& d, const EnvelopeTable& table);

/// Invariant-curve weight u_nu / u_du * h^hpow at one endpoint.
struct CurveWeight {
    int nu, du, hpow;
    int sigma() const { return nu - du; }
    friend bool operator==(const CurveWeight& a, const CurveWeight& b) {
        return a.nu == b.nu && a.du == b.du && a.hpow == b.hpow;
    }
    friend bool operator<(const CurveWeight& a, const CurveWeight& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        if (a.du != b.du) return a.du < b.du;
        return a.hpow < b.hpow;
    }
};

struct CurveGraph {
    std::vector<BCT> vertices;
    struct Edge {
        int a, b;
        CurveWeight wa, wb;
    };
    std::vector<Edge> edges;
};

/// Partial order on fixed points derived from a curve graph: on every edge the
/// endpoint whose weight has positive sigma-weight dominates; take the
/// transitive closure. Throws on non-gradable graphs.
struct FixedOrder {
    int n = 0;
    std::vector<std::vector<char>> le;  // le[a][b]: a <= b
    bool leq(int a, int b) const { return le.at(a).at(b) != 0; }
    bool lt(int a, int b) const { return a != b && leq(a, b); }
};

FixedOrder order_and_slope(const CurveGraph& g);

/// Weights of N_{f'}(Slope(f)): tangent weights at f' minus (N+ weights and
/// the edge weights at f' toward f'' with f' < f'' <= f), span semantics.
std::vector<LinearForm> slope_normal(const BraneDiagram& d, const CurveGraph& g,
                                     int f, int fp);

/// Support axioms against an explicit curve graph (fixture or candidate).
AxiomReport check_support(const BraneDiagram& d, const EnvelopeTable& table,
                          const CurveGraph& g);

/// Unordered BCT pairs differing by the 2x2 move [[1,0],[0,1]] <-> [[0,1],[1,0]]
/// (rows/columns not necessarily adjacent): a subset of the invariant curves.
std::vector<std::pair<int, int>> candidate_curve_edges(const BraneDiagram& d);

/// Index of a BCT in the canonical enumeration order (-1 if absent).
int fixed_point_index(const std::vector<BCT>& points, const BCT& t);

}  // namespace bowlab
