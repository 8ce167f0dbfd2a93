#include "bowlab/envelope.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace bowlab {

namespace {

std::vector<VarSpace::Root> diagram_roots(const BraneDiagram& d) {
    std::vector<VarSpace::Root> roots;
    for (int p = 1; p < d.brane_count(); ++p)
        for (int t = 1; t <= d.d3[p]; ++t) roots.push_back({p, t});
    return roots;
}

}  // namespace

SpacePtr envelope_space(const BraneDiagram& d) {
    return VarSpace::make(d.d5_count(), 0, diagram_roots(d), true);
}

std::vector<FSmallTerm> f_small_terms(const BraneDiagram& d, const BCT& f) {
    RestrictionEntry loc = loc_K(d, f);
    TangentExpr te = tangent_expression(d);
    std::vector<FSmallTerm> out;
    auto sides = [&](const TangentExpr::Slot& s) {
        std::vector<FSmallTerm::Side> v;
        if (s.framing) {
            v.push_back({false, 0, 0, s.index, 0});
        } else if (s.index >= 1 && s.index < d.brane_count()) {
            const auto& ws = loc.bundles[s.index - 1];
            for (size_t t = 0; t < ws.size(); ++t)
                v.push_back({true, s.index, static_cast<int>(t) + 1, ws[t].u_index, ws[t].h_power});
        }
        return v;
    };
    for (const auto& term : te.terms) {
        // Hom(src,dst) expands to dst/src over the roots
        for (const auto& y : sides(term.src)) {
            for (const auto& x : sides(term.dst)) {
                if (x.u >= y.u) continue;  // f-small needs Loc(x/y) = u_i/u_j, i < j
                out.push_back({x, y, term.h_power, term.coeff});
            }
        }
    }
    return out;
}

namespace {

LinearForm side_form(const SpacePtr& sp, const FSmallTerm::Side& s) {
    if (s.is_root) {
        auto var = sp->find_root(s.bundle, s.slot);
        if (!var) throw IntegrityError("root variable missing from the envelope space");
        return LinearForm::variable(sp, *var);
    }
    return LinearForm::variable(sp, sp->u_index(s.u));
}

}  // namespace

FactoredRational w_tilde(const BraneDiagram& d, const BCT& f) {
    SpacePtr sp = envelope_space(d);
    FactoredRational out(sp);
    for (const auto& t : f_small_terms(d, f)) {
        LinearForm form = side_form(sp, t.x);
        form -= side_form(sp, t.y);
        if (t.hpow != 0) form.add_coeff(sp->h_index(), Scalar(t.hpow));
        out.mul_form(form, t.coeff);
    }
    return out;
}

Scalar envelope_normalizer(const BraneDiagram& d, const BCT& f) {
    TieDiagram td = bct_to_tie(f, d);
    std::map<int, std::vector<std::pair<int, int>>> by_d5;
    for (const auto& tie : td.ties) by_d5[tie.second].push_back(tie);
    Scalar nf(1);
    for (const auto& [j, ties] : by_d5) {
        std::vector<int> cover(d.brane_count(), 0);
        int upos = d.d5_position(j);
        for (const auto& [i, jj] : ties) {
            int a = d.ns5_position(i), b = upos;
            if (a > b) std::swap(a, b);
            for (int p = a; p < b; ++p) ++cover[p];
        }
        for (int p = 1; p < d.brane_count(); ++p)
            if (cover[p] > 1) nf *= Scalar::factorial(static_cast<unsigned>(cover[p]));
    }
    return nf;
}

std::vector<FactoredRational> w_f(const BraneDiagram& d, const BCT& f) {
    SpacePtr sp = envelope_space(d);
    FactoredRational wt = w_tilde(d, f);
    std::vector<std::vector<int>> blocks;
    for (int p = 1; p < d.brane_count(); ++p) {
        if (d.d3[p] == 0) continue;
        std::vector<int> blk;
        for (int t = 1; t <= d.d3[p]; ++t) blk.push_back(*sp->find_root(p, t));
        blocks.push_back(blk);
    }
    std::vector<FactoredRational> out = symmetrize(wt, blocks);
    Scalar inv_nf = envelope_normalizer(d, f).inv();
    for (auto& s : out) s.mul_scalar(inv_nf);
    return out;
}

long tau_direction(int global_root_position, int seed_direction) {
    return nth_prime(global_root_position + 1 + 101 * seed_direction);
}

// ------------------------------------------------------------------------
// restriction evaluator: iterates the symmetrization summands of W_f under
// the eps-shifted substitution without materializing the symbolic sum
namespace {

struct ValueRef {            // Loc_H(fp) value with its eps direction
    int u;                   // 1-based D5 index
    int h;                   // h-power
    long tau;                // eps coefficient (0 for framing u's)
};

struct FactorDesc {
    // sides: block position (-1 for framing/u side) and slot (0-based), or u
    int bx, jx, ux;  // x side: bx >= 0 means root (block bx, slot jx); else u = ux
    int by, jy, uy;
    int hpow;
    int exp;
};

class RestrictEvaluator {
public:
    RestrictEvaluator(const BraneDiagram& d, const BCT& f, const EnvelopeOptions& opts)
        : d_(d), opts_(opts) {
        terms_ = f_small_terms(d, f);
        nf_inv_ = envelope_normalizer(d, f).inv();
        for (int p = 1; p < d.brane_count(); ++p)
            if (d.d3[p] > 0) {
                block_of_bundle_[p] = static_cast<int>(block_sizes_.size());
                block_sizes_.push_back(d.d3[p]);
            }
        for (const auto& t : terms_) {
            FactorDesc fd;
            fd.hpow = t.hpow;
            fd.exp = t.coeff;
            if (t.x.is_root) {
                fd.bx = block_of_bundle_.at(t.x.bundle);
                fd.jx = t.x.slot - 1;
                fd.ux = 0;
                referenced_.insert(fd.bx);
            } else {
                fd.bx = -1;
                fd.jx = 0;
                fd.ux = t.x.u;
            }
            if (t.y.is_root) {
                fd.by = block_of_bundle_.at(t.y.bundle);
                fd.jy = t.y.slot - 1;
                fd.uy = 0;
                referenced_.insert(fd.by);
            } else {
                fd.by = -1;
                fd.jy = 0;
                fd.uy = t.y.u;
            }
            factors_.push_back(fd);
        }
    }

    LaurentPoly evaluate(const BCT& fp, LimitStats* stats) {
        saw_indeterminate_ = false;
        // values per block slot: Loc_H(fp) plus tau directions
        RestrictionEntry loc = loc_K(d_, fp);
        values_.assign(block_sizes_.size(), {});
        int global_pos = 0;
        for (int p = 1; p < d_.brane_count(); ++p) {
            if (d_.d3[p] == 0) continue;
            int b = block_of_bundle_.at(p);
            for (int t = 0; t < d_.d3[p]; ++t) {
                const auto& w = loc.bundles[p - 1][t];
                values_[b].push_back(
                    {w.u_index, w.h_power, tau_direction(global_pos, opts_.seed_direction)});
                ++global_pos;
            }
        }
        // blocks the formula never references contribute d! equal copies
        std::vector<int> active;
        Scalar mult(1);
        for (size_t b = 0; b < block_sizes_.size(); ++b) {
            if (referenced_.count(static_cast<int>(b))) active.push_back(static_cast<int>(b));
            else mult *= Scalar::factorial(static_cast<unsigned>(block_sizes_[b]));
        }
        Scalar scale = nf_inv_ * mult;

        // precompute per-factor lookup tables over the value positions;
        // keys (a, b, hc, B) interned per evaluate() call
        struct Cell {
            int key;    // -1 for a pure-eps factor
            long B;     // eps coefficient of a pure-eps factor
        };
        registry_.clear();
        key_index_.clear();
        aregistry_.clear();
        akey_index_.clear();
        akey_of_.clear();
        struct FactorTable {
            int which;  // 0: both roots, 1: x root only, 2: y root only, 3: neither
            int bx, by;
            int dx, dy;
            int exp;
            std::vector<Cell> cells;  // dx*dy / dx / dy / 1 entries
        };
        std::vector<FactorTable> tables;
        tables.reserve(factors_.size());
        for (const auto& fd : factors_) {
            FactorTable ft;
            ft.bx = fd.bx;
            ft.by = fd.by;
            ft.dx = fd.bx >= 0 ? static_cast<int>(values_[fd.bx].size()) : 1;
            ft.dy = fd.by >= 0 ? static_cast<int>(values_[fd.by].size()) : 1;
            ft.exp = fd.exp;
            ft.which = (fd.bx >= 0 ? 0 : 2) + (fd.by >= 0 ? 0 : 1);
            ft.cells.resize(static_cast<size_t>(ft.dx) * ft.dy);
            for (int px = 0; px < ft.dx; ++px) {
                ValueRef x = fd.bx >= 0 ? values_[fd.bx][px] : ValueRef{fd.ux, 0, 0};
                for (int py = 0; py < ft.dy; ++py) {
                    ValueRef y = fd.by >= 0 ? values_[fd.by][py] : ValueRef{fd.uy, 0, 0};
                    int hc = x.h - y.h + fd.hpow;
                    long B = x.tau - y.tau;
                    Cell cell;
                    if (x.u == y.u && hc == 0) {
                        cell.key = -1;
                        cell.B = B;
                    } else {
                        cell.key = intern_key(x.u == y.u ? 0 : x.u, x.u == y.u ? 0 : y.u, hc, B);
                        cell.B = 0;
                    }
                    ft.cells[static_cast<size_t>(px) * ft.dy + py] = cell;
                }
            }
            tables.push_back(std::move(ft));
        }
        // recursion over the active blocks' permutations, largest block first;
        // classification factors are evaluated at the deepest level they touch
        // and subtrees whose eps-valuation cannot come back to <= 0 are pruned
        std::sort(active.begin(), active.end(),
                  [&](int a, int b) { return block_sizes_[a] > block_sizes_[b]; });
        size_t levels = active.size();
        std::vector<int> active_pos(block_sizes_.size(), -1);
        for (size_t i = 0; i < levels; ++i) active_pos[active[i]] = static_cast<int>(i);
        std::vector<std::vector<std::vector<int>>> perms(levels);
        for (size_t i = 0; i < levels; ++i) {
            int dsz = block_sizes_[active[i]];
            std::vector<int> p(dsz);
            std::iota(p.begin(), p.end(), 0);
            do {
                perms[i].push_back(p);
            } while (std::next_permutation(p.begin(), p.end()));
        }
        std::vector<std::pair<int, int>> slots;
        for (const auto& fd : factors_) slots.push_back({fd.jx, fd.jy});

        // factor level: deepest active block it touches; -1 when it touches no
        // block (cannot happen: every f-small factor has a root side)
        auto level_of = [&](const FactorDesc& fd) {
            int lev = -1;
            if (fd.bx >= 0) lev = std::max(lev, active_pos[fd.bx]);
            if (fd.by >= 0) lev = std::max(lev, active_pos[fd.by]);
            return lev;
        };
        std::vector<std::vector<size_t>> classify(levels);
        for (size_t t = 0; t < tables.size(); ++t) {
            bool can_be_pure = false;
            for (const auto& cell : tables[t].cells)
                if (cell.key < 0) { can_be_pure = true; break; }
            if (!can_be_pure) continue;
            int lev = level_of(factors_[t]);
            if (lev >= 0) classify[static_cast<size_t>(lev)].push_back(t);
        }
        // denominator capacity strictly below each level
        std::vector<int> rem_cap(levels + 1, 0);
        for (size_t L = levels; L-- > 0;) {
            int cap = 0;
            for (size_t t : classify[L])
                if (tables[t].exp < 0) cap += -tables[t].exp;
            rem_cap[L] = rem_cap[L + 1] + cap;
        }

        struct Survivor {
            Scalar scalar;
            int eps_pow;
            std::vector<std::pair<int, int>> fs;  // (key, exp)
        };
        std::vector<Survivor> survivors;
        std::vector<int> key_exp(registry_.size(), 0);
        std::vector<int> touched;
        std::vector<const std::vector<int>*> cur(levels, nullptr);

        total_summands_ = 1;
        for (size_t i = 0; i < levels; ++i) total_summands_ *= perms[i].size();

        auto cell_at = [&](size_t t) -> const Cell& {
            const FactorTable& ft = tables[t];
            int px = ft.bx >= 0 ? (*cur[active_pos[ft.bx]])[slots[t].first] : 0;
            int py = ft.by >= 0 ? (*cur[active_pos[ft.by]])[slots[t].second] : 0;
            return ft.cells[static_cast<size_t>(px) * ft.dy + py];
        };

        std::function<void(size_t, int, int)> recurse = [&](size_t L, int eps_pow, int eps_den) {
            if (L == levels) {
                if (eps_den > 0) saw_indeterminate_ = true;
                if (eps_pow > 0) return;
                Survivor sv;
                sv.scalar = scale;
                sv.eps_pow = eps_pow;
                touched.clear();
                for (size_t t = 0; t < tables.size(); ++t) {
                    const Cell& cell = cell_at(t);
                    if (cell.key < 0) {
                        sv.scalar *= Scalar(cell.B).pow(tables[t].exp);
                    } else {
                        if (key_exp[cell.key] == 0) touched.push_back(cell.key);
                        key_exp[cell.key] += tables[t].exp;
                    }
                }
                for (int k : touched) {
                    if (key_exp[k] != 0) sv.fs.push_back({k, key_exp[k]});
                    key_exp[k] = 0;
                }
                survivors.push_back(std::move(sv));
                return;
            }
            for (const auto& perm : perms[L]) {
                cur[L] = &perm;
                int e = eps_pow, dn = eps_den;
                for (size_t t : classify[L]) {
                    const Cell& cell = cell_at(t);
                    if (cell.key < 0) {
                        e += tables[t].exp;
                        if (tables[t].exp < 0) dn += -tables[t].exp;
                    }
                }
                if (e > rem_cap[L + 1]) {
                    if (dn > 0) saw_indeterminate_ = true;
                    continue;  // every deeper completion keeps eps_pow > 0
                }
                recurse(L + 1, e, dn);
            }
        };
        recurse(0, 0, 0);

        // split the survivors: regular ones (eps valuation 0) only need the
        // eps-free parts of their factors and aggregate by that content;
        // singular ones (negative valuation) go through the exact eps series
        SpacePtr tsp = ktheory_space(d_);
        auto aform = [&](int akey) {
            auto [a, b, hc] = aregistry_[akey];
            LinearForm f(tsp);
            if (a != b) {
                f.add_coeff(tsp->u_index(a), Scalar(1));
                f.add_coeff(tsp->u_index(b), Scalar(-1));
            }
            if (hc != 0) f.add_coeff(tsp->h_index(), Scalar(hc));
            Scalar lead = f.normalize();
            return std::make_pair(f, lead);
        };
        std::map<std::vector<std::pair<int, int>>, Scalar> groups;
        std::vector<FactoredRational> singular;
        SpacePtr lsp = limit_space();
        for (const auto& sv : survivors) {
            if (sv.eps_pow == 0) {
                std::map<int, int> net;
                for (const auto& [key, e] : sv.fs) net[akey_of_[key]] += e;
                std::vector<std::pair<int, int>> flat;
                for (const auto& [k, e] : net)
                    if (e != 0) flat.push_back({k, e});
                auto it = groups.find(flat);
                if (it == groups.end()) groups.emplace(std::move(flat), sv.scalar);
                else it->second += sv.scalar;
            } else {
                FactoredRational fr(lsp);
                fr.mul_scalar(sv.scalar);
                fr.mul_form(LinearForm::variable(lsp, lsp->eps_index()), sv.eps_pow);
                for (const auto& [key, e] : sv.fs) {
                    auto [a, b, hc, B] = registry_[key];
                    LinearForm form(lsp);
                    if (a != b) {
                        form.add_coeff(lsp->u_index(a), Scalar(1));
                        form.add_coeff(lsp->u_index(b), Scalar(-1));
                    }
                    if (hc != 0) form.add_coeff(lsp->h_index(), Scalar(hc));
                    if (B != 0) form.add_coeff(lsp->eps_index(), Scalar(B));
                    fr.mul_form(form, e);
                }
                singular.push_back(std::move(fr));
            }
        }

        LimitStats st;
        st.summands_seen = total_summands_;
        // the global denominator over the regular groups and the singular part
        std::vector<int> denmax(aregistry_.size(), 0);
        for (const auto& [flat, scalar] : groups)
            for (const auto& [k, e] : flat)
                if (e < 0) denmax[k] = std::max(denmax[k], -e);
        RationalLimit sing;
        sing.num = LaurentPoly::zero(tsp);
        if (!singular.empty()) {
            LimitStats sst;
            RationalLimit raw = limit_at_zero_rational(singular, &sst);
            st.max_pole_order = sst.max_pole_order;
            st.pole_cancellation = sst.pole_cancellation;
            // project numerator and denominator into the table space
            for (const auto& [e, c] : raw.num.terms()) {
                ExpVec pe(tsp->size(), 0);
                for (int i = 0; i < tsp->size(); ++i) pe[i] = e[i];
                if (e[lsp->eps_index()] != 0)
                    throw IntegrityError("limit left an eps exponent");
                sing.num.add_term(pe, c);
            }
            for (const auto& [form, mult] : raw.den) {
                LinearForm pf(tsp);
                pf.add_constant(form.constant_term());
                for (const auto& [v, c] : form.coeffs()) {
                    if (v == lsp->eps_index()) {
                        if (!c.is_zero())
                            throw IntegrityError("denominator kept an eps part");
                        continue;
                    }
                    pf.add_coeff(v, c);
                }
                sing.den.push_back({pf, mult});
            }
        }
        // singular denominators join the global one, matched through the
        // akey table where possible
        std::vector<std::pair<LinearForm, int>> extra_forms;
        for (const auto& [form, mult] : sing.den) {
            bool matched = false;
            for (size_t k = 0; k < aregistry_.size() && !matched; ++k) {
                auto [f, lead] = aform(static_cast<int>(k));
                if (f.cmp(form) == 0) {
                    denmax[k] = std::max(denmax[k], mult);
                    matched = true;
                }
            }
            if (!matched) extra_forms.push_back({form, mult});
        }

        // numerator assembly over the common denominator
        auto pow_form = [&](LaurentPoly& acc, const LinearForm& f, int e) {
            LaurentPoly fp = f.to_poly();
            for (int i = 0; i < e; ++i) acc *= fp;
        };
        LaurentPoly num(tsp);
        for (const auto& [flat, scalar] : groups) {
            if (scalar.is_zero()) continue;
            Scalar coeff = scalar;
            LaurentPoly part = LaurentPoly::constant(tsp, Scalar(1));
            std::map<int, int> own;
            for (const auto& [k, e] : flat) {
                auto [f, lead] = aform(k);
                coeff *= lead.pow(e);
                if (e > 0) pow_form(part, f, e);
                else own[k] = -e;
            }
            for (size_t k = 0; k < denmax.size(); ++k) {
                int missing = denmax[k] - (own.count(static_cast<int>(k)) ? own[static_cast<int>(k)] : 0);
                if (missing > 0) {
                    auto [f, lead] = aform(static_cast<int>(k));
                    pow_form(part, f, missing);
                }
            }
            for (const auto& [form, mult] : extra_forms) pow_form(part, form, mult);
            num += part.scaled(coeff);
        }
        if (!sing.num.is_zero()) {
            // bring the singular numerator over the global denominator
            LaurentPoly part = sing.num;
            std::vector<int> own(aregistry_.size(), 0);
            std::vector<std::pair<LinearForm, int>> own_extra;
            for (const auto& [form, mult] : sing.den) {
                bool matched = false;
                for (size_t k = 0; k < aregistry_.size() && !matched; ++k) {
                    auto [f, lead] = aform(static_cast<int>(k));
                    if (f.cmp(form) == 0) {
                        own[k] = mult;
                        matched = true;
                    }
                }
                if (!matched) own_extra.push_back({form, mult});
            }
            for (size_t k = 0; k < denmax.size(); ++k) {
                int missing = denmax[k] - own[k];
                if (missing > 0) {
                    auto [f, lead] = aform(static_cast<int>(k));
                    pow_form(part, f, missing);
                }
            }
            for (const auto& [form, mult] : extra_forms) {
                int have = 0;
                for (const auto& [of, om] : own_extra)
                    if (of.cmp(form) == 0) have = om;
                if (mult - have > 0) pow_form(part, form, mult - have);
            }
            num += part;
        }
        // final exact division by the global denominator
        for (size_t k = 0; k < denmax.size(); ++k) {
            if (denmax[k] == 0) continue;
            auto [f, lead] = aform(static_cast<int>(k));
            (void)lead;  // absorbed into the group coefficients already
            for (int i = 0; i < denmax[k]; ++i) {
                auto q = divide_exact_linear(num, f);
                if (!q)
                    throw ConjectureFailure("limit exists but is not a polynomial");
                num = std::move(*q);
            }
        }
        for (const auto& [form, mult] : extra_forms) {
            for (int i = 0; i < mult; ++i) {
                auto q = divide_exact_linear(num, form);
                if (!q)
                    throw ConjectureFailure("limit exists but is not a polynomial");
                num = std::move(*q);
            }
        }
        if (saw_indeterminate_) st.pole_cancellation = true;
        if (stats) *stats = st;
        return num;
    }

    SpacePtr limit_space() {
        if (!limit_space_) limit_space_ = VarSpace::make(d_.d5_count(), 0, {}, true);
        return limit_space_;
    }

private:
    int intern_key(int a, int b, int hc, long B) {
        auto tup = std::make_tuple(a, b, hc, B);
        auto it = key_index_.find(tup);
        if (it != key_index_.end()) return it->second;
        int id = static_cast<int>(registry_.size());
        registry_.push_back(tup);
        key_index_.emplace(tup, id);
        // the eps-free part of the form, shared across tau directions
        auto atup = std::make_tuple(a, b, hc);
        auto ait = akey_index_.find(atup);
        int aid;
        if (ait == akey_index_.end()) {
            aid = static_cast<int>(aregistry_.size());
            aregistry_.push_back(atup);
            akey_index_.emplace(atup, aid);
        } else {
            aid = ait->second;
        }
        akey_of_.resize(registry_.size());
        akey_of_[id] = aid;
        return id;
    }

    const BraneDiagram& d_;
    EnvelopeOptions opts_;
    std::vector<FSmallTerm> terms_;
    std::vector<FactorDesc> factors_;
    std::map<int, int> block_of_bundle_;
    std::vector<int> block_sizes_;
    std::set<int> referenced_;
    std::vector<std::vector<ValueRef>> values_;
    Scalar nf_inv_;
    SpacePtr limit_space_;
    size_t total_summands_ = 0;
    bool saw_indeterminate_ = false;
    std::vector<std::tuple<int, int, int, long>> registry_;
    std::map<std::tuple<int, int, int, long>, int> key_index_;
    std::vector<std::tuple<int, int, int>> aregistry_;
    std::map<std::tuple<int, int, int>, int> akey_index_;
    std::vector<int> akey_of_;
};

}  // namespace

LaurentPoly restrict_w(const BraneDiagram& d, const BCT& f, const BCT& fp,
                       const EnvelopeOptions& opts, LimitStats* stats) {
    RestrictEvaluator ev(d, f, opts);
    try {
        return ev.evaluate(fp, stats);
    } catch (const ConjectureFailure& e) {
        throw ConjectureFailure(std::string(e.what()) + " [diagram " + print_diagram(d) + "]");
    }
}

EnvelopeTable envelope_table(const BraneDiagram& d, const EnvelopeOptions& opts) {
    EnvelopeTable table;
    table.space = ktheory_space(d);
    MarginData md = charges_and_margins(d);
    table.fixed_points = enumerate_fixed_points(md);
    size_t n = table.fixed_points.size();
    table.entries.assign(n, std::vector<LaurentPoly>(n, LaurentPoly::zero(table.space)));

    std::atomic<bool> limit_used{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto work = [&](size_t row) {
        try {
            RestrictEvaluator ev(d, table.fixed_points[row], opts);
            for (size_t col = 0; col < n; ++col) {
                LimitStats st;
                table.entries[row][col] = ev.evaluate(table.fixed_points[col], &st);
                if (st.pole_cancellation) limit_used = true;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    int threads = std::max(1, opts.threads);
    if (threads == 1 || n <= 1) {
        for (size_t row = 0; row < n; ++row) work(row);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                while (true) {
                    size_t row = next.fetch_add(1);
                    if (row >= n) break;
                    work(row);
                }
            });
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    table.limit_path_used = limit_used;
    return table;
}

// ------------------------------------------------------------- axioms

AxiomReport check_normalization(const BraneDiagram& d, const EnvelopeTable& table) {
    AxiomReport rep;
    for (size_t i = 0; i < table.fixed_points.size(); ++i) {
        LaurentPoly tangent = tangent_at(d, table.fixed_points[i]);
        ChamberSplit split = chamber_split(d, tangent);
        LaurentPoly expect = LaurentPoly::constant(table.space, Scalar(1));
        for (const auto& w : split.n_minus) expect *= w.to_poly();
        if (!(expect == table.entries[i][i])) {
            rep.ok = false;
            rep.failures.push_back("normalization fails at fixed point " + std::to_string(i + 1));
        }
    }
    return rep;
}

AxiomReport check_boundary(const BraneDiagram& d, const EnvelopeTable& table) {
    AxiomReport rep;
    SpacePtr sp = table.space;
    LinearForm hform = LinearForm::variable(sp, sp->h_index());
    for (size_t i = 0; i < table.fixed_points.size(); ++i) {
        for (size_t j = 0; j < table.fixed_points.size(); ++j) {
            if (i == j) continue;
            if (!divides_linear(table.entries[i][j], hform)) {
                rep.ok = false;
                rep.failures.push_back("boundary axiom fails at entry (" + std::to_string(i + 1) +
                                       "," + std::to_string(j + 1) + ")");
            }
        }
    }
    return rep;
}

FixedOrder order_and_slope(const CurveGraph& g) {
    FixedOrder ord;
    ord.n = static_cast<int>(g.vertices.size());
    ord.le.assign(ord.n, std::vector<char>(ord.n, 0));
    for (int i = 0; i < ord.n; ++i) ord.le[i][i] = 1;
    for (const auto& e : g.edges) {
        int sa = e.wa.sigma(), sb = e.wb.sigma();
        if (sa == 0 || sb == 0 || (sa > 0) == (sb > 0))
            throw UsageError("curve endpoint weights must have opposite sigma signs");
        int lower = sa < 0 ? e.a : e.b;
        int upper = sa < 0 ? e.b : e.a;
        ord.le.at(lower).at(upper) = 1;
    }
    // transitive closure
    for (int k = 0; k < ord.n; ++k)
        for (int i = 0; i < ord.n; ++i)
            if (ord.le[i][k])
                for (int j = 0; j < ord.n; ++j)
                    if (ord.le[k][j]) ord.le[i][j] = 1;
    for (int i = 0; i < ord.n; ++i)
        for (int j = 0; j < ord.n; ++j)
            if (i != j && ord.le[i][j] && ord.le[j][i])
                throw DomainError("graph not gradable");
    return ord;
}

namespace {

std::map<CurveWeight, int> tangent_multiset(const BraneDiagram& d, const BCT& f) {
    LaurentPoly t = tangent_at(d, f);
    std::map<CurveWeight, int> out;
    SpacePtr sp = t.space();
    for (const auto& [e, c] : t.terms()) {
        int a = 0, b = 0;
        for (int i = 1; i <= sp->u_count(); ++i) {
            if (e[sp->u_index(i)] == 1) a = i;
            else if (e[sp->u_index(i)] == -1) b = i;
        }
        out[{a, b, e[sp->h_index()]}] += std::stoi(c.num_string());
    }
    return out;
}

LinearForm weight_form(const SpacePtr& sp, const CurveWeight& w) {
    LinearForm f(sp);
    f.add_coeff(sp->u_index(w.nu), Scalar(1));
    f.add_coeff(sp->u_index(w.du), Scalar(-1));
    if (w.hpow != 0) f.add_coeff(sp->h_index(), Scalar(w.hpow));
    return f;
}

}  // namespace

std::vector<LinearForm> slope_normal(const BraneDiagram& d, const CurveGraph& g, int f, int fp) {
    FixedOrder ord = order_and_slope(g);
    if (!(ord.lt(fp, f))) throw UsageError("slope_normal requires f' < f");
    auto avail = tangent_multiset(d, g.vertices.at(fp));
    // remove N+ (sigma-positive weights)
    for (auto& [w, k] : avail)
        if (w.sigma() > 0) k = 0;
    // remove edge weights at fp toward f'' with fp < f'' <= f (span semantics)
    for (const auto& e : g.edges) {
        int other = -1;
        CurveWeight w{0, 0, 0};
        if (e.a == fp) { other = e.b; w = e.wa; }
        else if (e.b == fp) { other = e.a; w = e.wb; }
        else continue;
        if (!(ord.lt(fp, other) && ord.leq(other, f))) continue;
        auto it = avail.find(w);
        if (it == avail.end())
            throw IntegrityError("curve weight missing from the tangent multiset");
        if (it->second > 0) --it->second;
    }
    SpacePtr sp = ktheory_space(d);
    std::vector<LinearForm> out;
    for (const auto& [w, k] : avail)
        for (int t = 0; t < k; ++t) out.push_back(weight_form(sp, w));
    return out;
}

AxiomReport check_support(const BraneDiagram& d, const EnvelopeTable& table, const CurveGraph& g) {
    AxiomReport rep;
    FixedOrder ord = order_and_slope(g);
    // match graph vertices to table fixed points
    std::vector<int> to_table(g.vertices.size(), -1);
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        to_table[i] = fixed_point_index(table.fixed_points, g.vertices[i]);
        if (to_table[i] < 0) throw UsageError("graph vertex is not a fixed point of the table");
    }
    for (size_t f = 0; f < g.vertices.size(); ++f) {
        for (size_t fp = 0; fp < g.vertices.size(); ++fp) {
            if (f == fp) continue;
            const LaurentPoly& entry = table.entries[to_table[f]][to_table[fp]];
            if (!ord.leq(static_cast<int>(fp), static_cast<int>(f))) {
                // support-1: f' not in Slope(f) forces a zero restriction
                if (!entry.is_zero()) {
                    rep.ok = false;
                    rep.failures.push_back("support-1 fails at (" + std::to_string(f + 1) + "," +
                                           std::to_string(fp + 1) + ")");
                }
                continue;
            }
            // support-2
            auto forms = slope_normal(d, g, static_cast<int>(f), static_cast<int>(fp));
            LaurentPoly rem = entry;
            bool ok = true;
            for (const auto& form : forms) {
                auto q = divide_exact_linear(rem, form);
                if (!q) { ok = false; break; }
                rem = std::move(*q);
            }
            if (!ok) {
                rep.ok = false;
                rep.failures.push_back("support-2 fails at (" + std::to_string(f + 1) + "," +
                                       std::to_string(fp + 1) + ")");
            }
        }
    }
    return rep;
}

std::vector<std::pair<int, int>> candidate_curve_edges(const BraneDiagram& d) {
    MarginData md = charges_and_margins(d);
    std::vector<BCT> points = enumerate_fixed_points(md);
    std::vector<std::pair<int, int>> out;
    for (size_t a = 0; a < points.size(); ++a) {
        for (size_t b = a + 1; b < points.size(); ++b) {
            std::vector<std::pair<int, int>> diff;
            for (int i = 0; i < md.m && diff.size() <= 4; ++i)
                for (int j = 0; j < md.n; ++j)
                    if (points[a].at(i, j) != points[b].at(i, j)) diff.push_back({i, j});
            if (diff.size() != 4) continue;
            std::set<int> rows{diff[0].first, diff[1].first, diff[2].first, diff[3].first};
            std::set<int> cols{diff[0].second, diff[1].second, diff[2].second, diff[3].second};
            if (rows.size() != 2 || cols.size() != 2) continue;
            int r1 = *rows.begin(), r2 = *rows.rbegin();
            int c1 = *cols.begin(), c2 = *cols.rbegin();
            // checkerboard pattern on both sides of the move
            if (points[a].at(r1, c1) == points[a].at(r2, c2) &&
                points[a].at(r1, c2) == points[a].at(r2, c1) &&
                points[a].at(r1, c1) != points[a].at(r1, c2))
                out.push_back({static_cast<int>(a), static_cast<int>(b)});
        }
    }
    return out;
}

int fixed_point_index(const std::vector<BCT>& points, const BCT& t) {
    for (size_t i = 0; i < points.size(); ++i)
        if (points[i] == t) return static_cast<int>(i);
    return -1;
}

}  // namespace bowlab
