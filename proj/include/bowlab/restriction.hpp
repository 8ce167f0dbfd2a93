#pragma once

#include <vector>

#include "bowlab/fixedpoints.hpp"

namespace bowlab {

/// K-theory weight u_{u_index} * h^h_power; cohomology form u_{u_index} + h_power*h.
struct WeightMonomial {
    int u_index;  // 1-based D5 index
    int h_power;

    friend bool operator==(const WeightMonomial& a, const WeightMonomial& b) {
        return a.u_index == b.u_index && a.h_power == b.h_power;
    }
    /// Sort order used for bundle root labels: u ascending, then h descending.
    friend bool operator<(const WeightMonomial& a, const WeightMonomial& b) {
        if (a.u_index != b.u_index) return a.u_index < b.u_index;
        return a.h_power > b.h_power;
    }
};

/// Per tautological bundle (interior D3 brane, 1-based), the multiset of
/// monomials the Grothendieck roots restrict to. bundles[i-1] has size d3[i].
struct RestrictionEntry {
    std::vector<std::vector<WeightMonomial>> bundles;
};

RestrictionEntry loc_K(const BraneDiagram& d, const TieDiagram& f);
RestrictionEntry loc_K(const BraneDiagram& d, const BCT& f);

/// Cohomological restriction: the componentwise logarithm of loc_K, each
/// monomial u_j*h^s read as the linear form u_j + s*h over the given space.
LinearForm loc_H_form(const SpacePtr& space, const WeightMonomial& w);
std::vector<std::vector<LinearForm>> loc_H(const BraneDiagram& d, const BCT& f);

/// Tangent bundle of Ch(D) in terms of tautological bundles and framings:
/// sum of coeff * h^h_power * Hom(src, dst).
struct TangentExpr {
    struct Slot {
        bool framing;  // false: tautological bundle; true: C_U
        int index;     // interior D3 index / D5 index, 1-based
        friend bool operator<(const Slot& a, const Slot& b) {
            if (a.framing != b.framing) return a.framing < b.framing;
            return a.index < b.index;
        }
        friend bool operator==(const Slot& a, const Slot& b) {
            return a.framing == b.framing && a.index == b.index;
        }
    };
    struct Term {
        Slot src, dst;
        int h_power;
        int coeff;
    };
    std::vector<Term> terms;
};

TangentExpr tangent_expression(const BraneDiagram& d);

/// Signed rank tally sum coeff * rank(src) * rank(dst); equals dimension(D).
long tangent_rank_tally(const BraneDiagram& d, const TangentExpr& t);

/// K-theory variable space for a diagram: u_1..u_n and h (no roots, no eps).
SpacePtr ktheory_space(const BraneDiagram& d);

/// Tangent space at a fixed point as a Laurent polynomial in u's and h with
/// non-negative integer coefficients summing to dimension(D).
LaurentPoly tangent_at(const BraneDiagram& d, const BCT& f);
LaurentPoly tangent_at(const BraneDiagram& d, const RestrictionEntry& loc, const TangentExpr& te);

/// sigma(z) = (z, z^2, ..., z^n, 1) splits tangent weights by the sign of
/// a-b for a monomial u_a/u_b*h^k. Returns cohomology linear forms.
struct ChamberSplit {
    std::vector<LinearForm> n_plus;
    std::vector<LinearForm> n_minus;
};
ChamberSplit chamber_split(const BraneDiagram& d, const LaurentPoly& tangent);

/// Multiset of (u,h) pairs of a tangent polynomial (coefficients as counts).
std::vector<std::pair<WeightMonomial, WeightMonomial>> tangent_weight_pairs(const LaurentPoly& t);

/// K-theory consistency of the Hanany-Witten exact sequence
/// 0 -> xi2 -> xi3 + xi1 + C_U -> new xi2 -> 0 under u_k -> u_k*h.
bool hw_ktheory_check(const BraneDiagram& d, int pos, const BCT& f, std::string* diagnostic = nullptr);

/// K-theory consistency of a (TU) transition:
/// s(Loc_f(xi2)) = Loc_{f~}(xi1 + xi3 - xi2) with s the u_k <-> u_{k+1} swap.
bool tu_ktheory_check(const BraneDiagram& d, int pos, const BCT& f, std::string* diagnostic = nullptr);

}  // namespace bowlab
