#include "bowlab/restriction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace bowlab {

RestrictionEntry loc_K(const BraneDiagram& d, const TieDiagram& f) {
    RestrictionEntry out;
    out.bundles.assign(std::max(0, d.brane_count() - 1), {});
    std::map<int, std::vector<std::pair<int, int>>> by_d5;
    for (const auto& tie : f.ties) by_d5[tie.second].push_back(tie);
    for (const auto& [j, ties] : by_d5) {
        Butterfly b = butterfly_for(d, j, ties);
        for (const auto& col : b.columns)
            for (int l = col.top; l > col.top - col.count; --l)
                out.bundles[col.d3 - 1].push_back({j, l});
    }
    for (int p = 1; p < d.brane_count(); ++p) {
        auto& v = out.bundles[p - 1];
        std::sort(v.begin(), v.end());
        if (static_cast<int>(v.size()) != d.d3[p])
            throw IntegrityError("restriction multiset size differs from the multiplicity");
    }
    return out;
}

RestrictionEntry loc_K(const BraneDiagram& d, const BCT& f) {
    return loc_K(d, bct_to_tie(f, d));
}

LinearForm loc_H_form(const SpacePtr& space, const WeightMonomial& w) {
    LinearForm f(space);
    f.add_coeff(space->u_index(w.u_index), Scalar(1));
    if (w.h_power != 0) f.add_coeff(space->h_index(), Scalar(w.h_power));
    return f;
}

std::vector<std::vector<LinearForm>> loc_H(const BraneDiagram& d, const BCT& f) {
    SpacePtr sp = ktheory_space(d);
    RestrictionEntry k = loc_K(d, f);
    std::vector<std::vector<LinearForm>> out;
    for (const auto& bundle : k.bundles) {
        std::vector<LinearForm> forms;
        for (const auto& w : bundle) forms.push_back(loc_H_form(sp, w));
        out.push_back(std::move(forms));
    }
    return out;
}

TangentExpr tangent_expression(const BraneDiagram& d) {
    std::map<std::tuple<TangentExpr::Slot, TangentExpr::Slot, int>, int> acc;
    auto bundle = [&](int p) { return TangentExpr::Slot{false, p}; };
    auto framing = [&](int j) { return TangentExpr::Slot{true, j}; };
    auto rank = [&](const TangentExpr::Slot& s) {
        return s.framing ? 1 : d.d3.at(s.index);
    };
    auto add = [&](TangentExpr::Slot src, TangentExpr::Slot dst, int hp, int coeff) {
        if (coeff == 0 || rank(src) == 0 || rank(dst) == 0) return;
        acc[{src, dst, hp}] += coeff;
    };
    int d5_seen = 0;
    for (int p = 1; p <= d.brane_count(); ++p) {
        int left = p - 1, right = p;  // interior D3 indices (0 = outer)
        auto L = bundle(left), R = bundle(right);
        if (d.branes[p - 1] == Brane::D5) {
            int j = ++d5_seen;
            // T_U = Hom(xi_{U+},xi_{U-}) + h Hom(xi_{U+},C_U) + Hom(C_U,xi_{U-})
            //       + h End(xi_{U-}) + h End(xi_{U+}),  minus h Hom(xi_{U+},xi_{U-})
            add(R, L, 0, 1);
            add(R, L, 1, -1);
            add(R, framing(j), 1, 1);
            add(framing(j), L, 0, 1);
            add(L, L, 1, 1);
            add(R, R, 1, 1);
        } else {
            // T_V = h Hom(xi_{V+},xi_{V-}) + Hom(xi_{V-},xi_{V+})
            add(R, L, 1, 1);
            add(L, R, 0, 1);
        }
    }
    for (int p = 1; p < d.brane_count(); ++p) {
        auto X = bundle(p);
        add(X, X, 0, -1);
        add(X, X, 1, -1);
    }
    TangentExpr out;
    for (const auto& [key, coeff] : acc) {
        if (coeff == 0) continue;
        out.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), coeff});
    }
    return out;
}

long tangent_rank_tally(const BraneDiagram& d, const TangentExpr& t) {
    long total = 0;
    for (const auto& term : t.terms) {
        long rs = term.src.framing ? 1 : d.d3.at(term.src.index);
        long rd = term.dst.framing ? 1 : d.d3.at(term.dst.index);
        total += static_cast<long>(term.coeff) * rs * rd;
    }
    return total;
}

SpacePtr ktheory_space(const BraneDiagram& d) {
    return VarSpace::make(d.d5_count(), 0, {}, false);
}

LaurentPoly tangent_at(const BraneDiagram& d, const RestrictionEntry& loc, const TangentExpr& te) {
    SpacePtr sp = ktheory_space(d);
    LaurentPoly out(sp);
    auto weights = [&](const TangentExpr::Slot& s) {
        std::vector<WeightMonomial> w;
        if (s.framing) w.push_back({s.index, 0});
        else if (s.index >= 1 && s.index < d.brane_count()) w = loc.bundles.at(s.index - 1);
        return w;
    };
    for (const auto& term : te.terms) {
        for (const auto& a : weights(term.src)) {
            for (const auto& b : weights(term.dst)) {
                // Hom(src,dst) restricts to dst/src
                ExpVec e(sp->size(), 0);
                e[sp->u_index(b.u_index)] += 1;
                e[sp->u_index(a.u_index)] -= 1;
                e[sp->h_index()] = b.h_power - a.h_power + term.h_power;
                out.add_term(e, Scalar(term.coeff));
            }
        }
    }
    // reality check: a genuine representation, not a virtual one
    long total = 0;
    for (const auto& [e, c] : out.terms()) {
        if (c.sign() < 0 || c.den_string() != "1")
            throw IntegrityError("tangent reality check failed");
        total += std::stol(c.num_string());
    }
    if (total != dimension(d)) throw IntegrityError("tangent reality check failed");
    return out;
}

LaurentPoly tangent_at(const BraneDiagram& d, const BCT& f) {
    return tangent_at(d, loc_K(d, f), tangent_expression(d));
}

ChamberSplit chamber_split(const BraneDiagram& d, const LaurentPoly& tangent) {
    ChamberSplit out;
    SpacePtr sp = tangent.space();
    int n = d.d5_count();
    for (const auto& [e, c] : tangent.terms()) {
        int a = 0, b = 0;
        for (int i = 1; i <= n; ++i) {
            if (e[sp->u_index(i)] == 1) a = i;
            else if (e[sp->u_index(i)] == -1) b = i;
            else if (e[sp->u_index(i)] != 0)
                throw IntegrityError("tangent monomial is not of the form u_a/u_b*h^k");
        }
        if (a == 0 || b == 0) throw DomainError("zero chamber weight");
        int k = e[sp->h_index()];
        LinearForm w(sp);
        w.add_coeff(sp->u_index(a), Scalar(1));
        w.add_coeff(sp->u_index(b), Scalar(-1));
        if (k != 0) w.add_coeff(sp->h_index(), Scalar(k));
        long mult = std::stol(c.num_string());
        for (long t = 0; t < mult; ++t) {
            if (a > b) out.n_plus.push_back(w);
            else out.n_minus.push_back(w);
        }
    }
    return out;
}

std::vector<std::pair<WeightMonomial, WeightMonomial>> tangent_weight_pairs(const LaurentPoly& t) {
    std::vector<std::pair<WeightMonomial, WeightMonomial>> out;
    SpacePtr sp = t.space();
    int n = sp->u_count();
    for (const auto& [e, c] : t.terms()) {
        int a = 0, b = 0;
        for (int i = 1; i <= n; ++i) {
            if (e[sp->u_index(i)] == 1) a = i;
            else if (e[sp->u_index(i)] == -1) b = i;
        }
        long mult = std::stol(c.num_string());
        for (long k = 0; k < mult; ++k)
            out.push_back({{a, e[sp->h_index()]}, {b, 0}});
    }
    return out;
}

namespace {

using Multiset = std::map<WeightMonomial, int>;

Multiset to_multiset(const std::vector<WeightMonomial>& v) {
    Multiset m;
    for (const auto& w : v) ++m[w];
    return m;
}

bool subtract(Multiset& m, const Multiset& sub) {
    for (const auto& [w, k] : sub) {
        auto it = m.find(w);
        if (it == m.end() || it->second < k) return false;
        it->second -= k;
        if (it->second == 0) m.erase(it);
    }
    return true;
}

std::string show(const Multiset& m) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [w, k] : m) {
        if (!first) os << ", ";
        os << "u" << w.u_index << "h^" << w.h_power << (k > 1 ? "*" + std::to_string(k) : "");
        first = false;
    }
    os << "}";
    return os.str();
}

std::vector<WeightMonomial> bundle_loc(const RestrictionEntry& loc, int bundle) {
    if (bundle < 1 || bundle > static_cast<int>(loc.bundles.size())) return {};
    return loc.bundles[bundle - 1];
}

}  // namespace

bool hw_ktheory_check(const BraneDiagram& d, int pos, const BCT& f, std::string* diagnostic) {
    if (pos < 0 || pos + 1 >= d.brane_count()) throw UsageError("hw position out of range");
    if (d.branes[pos] == d.branes[pos + 1]) throw UsageError("same-type pair");
    // orient so that `left` is the (D5,NS5) diagram of the exact sequence
    BraneDiagram left, right;
    if (d.branes[pos] == Brane::D5) {
        left = d;
        right = hw_transition(d, pos);
    } else {
        left = hw_transition(d, pos);
        right = d;
    }
    // the moved D5's index is the same on both sides
    int k = 0;
    for (int p = 0; p <= pos; ++p)
        if (left.branes[p] == Brane::D5) ++k;

    RestrictionEntry locL = loc_K(left, f);
    RestrictionEntry locR = loc_K(right, f);

    // RHS: Loc_f(xi1) + Loc_f(xi3) + {u_k h} - Loc_f(xi2), old side
    Multiset rhs = to_multiset(bundle_loc(locL, pos));
    for (const auto& w : bundle_loc(locL, pos + 2)) ++rhs[w];
    ++rhs[WeightMonomial{k, 1}];
    Multiset sub = to_multiset(bundle_loc(locL, pos + 1));
    if (!subtract(rhs, sub)) {
        if (diagnostic) *diagnostic = "multiset subtraction undefined: " + show(sub);
        return false;
    }
    // LHS: Loc of the new middle bundle with u_k shifted to u_k*h
    Multiset lhs;
    for (auto w : bundle_loc(locR, pos + 1)) {
        if (w.u_index == k) ++w.h_power;
        ++lhs[w];
    }
    if (lhs != rhs) {
        if (diagnostic)
            *diagnostic = "hw identity fails: lhs=" + show(lhs) + " rhs=" + show(rhs);
        return false;
    }
    return true;
}

bool tu_ktheory_check(const BraneDiagram& d, int pos, const BCT& f, std::string* diagnostic) {
    if (pos < 0 || pos + 1 >= d.brane_count()) throw UsageError("position out of range");
    if (d.branes[pos] != Brane::D5 || d.branes[pos + 1] != Brane::D5)
        throw UsageError("tu_ktheory_check needs an adjacent D5 pair");
    int k = 0;
    for (int p = 0; p <= pos; ++p)
        if (d.branes[p] == Brane::D5) ++k;
    BraneDiagram dt = tu_tv_transition(d, pos);
    BCT ft = map_tu(f, k - 1);

    RestrictionEntry loc = loc_K(d, f);
    RestrictionEntry loct = loc_K(dt, ft);

    auto swap_u = [&](WeightMonomial w) {
        if (w.u_index == k) w.u_index = k + 1;
        else if (w.u_index == k + 1) w.u_index = k;
        return w;
    };
    Multiset lhs;
    for (const auto& w : bundle_loc(loc, pos + 1)) ++lhs[swap_u(w)];
    Multiset rhs = to_multiset(bundle_loc(loct, pos));
    for (const auto& w : bundle_loc(loct, pos + 2)) ++rhs[w];
    Multiset sub = to_multiset(bundle_loc(loct, pos + 1));
    if (!subtract(rhs, sub)) {
        if (diagnostic) *diagnostic = "multiset subtraction undefined: " + show(sub);
        return false;
    }
    if (lhs != rhs) {
        if (diagnostic)
            *diagnostic = "tu identity fails: lhs=" + show(lhs) + " rhs=" + show(rhs);
        return false;
    }
    return true;
}

}  // namespace bowlab
