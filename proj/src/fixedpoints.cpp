#include "bowlab/fixedpoints.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bowlab {

std::vector<int> BCT::row_sums() const {
    std::vector<int> out;
    for (const auto& r : rows) out.push_back(std::accumulate(r.begin(), r.end(), 0));
    return out;
}

std::vector<int> BCT::col_sums() const {
    std::vector<int> out(col_count(), 0);
    for (const auto& r : rows)
        for (size_t j = 0; j < r.size(); ++j) out[j] += r[j];
    return out;
}

namespace {

// residual feasibility after fixing some rows: Gale-Ryser on the remaining
// row sums and column remainders
bool residual_feasible(const std::vector<int>& rows_left, const std::vector<int>& cols_left) {
    for (int x : cols_left)
        if (x < 0) return false;
    long sr = std::accumulate(rows_left.begin(), rows_left.end(), 0L);
    long sc = std::accumulate(cols_left.begin(), cols_left.end(), 0L);
    if (sr != sc) return false;
    if (rows_left.empty()) return sc == 0;
    int n = static_cast<int>(cols_left.size());
    for (int x : rows_left)
        if (x < 0 || x > n) return false;
    return gale_ryser(rows_left, cols_left);
}

struct Walker {
    int m, n;
    std::vector<int> r;
    std::vector<int> cols_left;
    std::vector<std::vector<int8_t>> rows;
    const std::function<bool(const BCT&)>* fn;
    bool stopped = false;

    // iterate candidate rows in descending lexicographic order: columns are
    // read left to right, a 1 sorts before a 0
    void recurse(int i) {
        if (stopped) return;
        if (i == m) {
            BCT t;
            t.rows = rows;
            if (!(*fn)(t)) stopped = true;
            return;
        }
        std::vector<int> rest(r.begin() + i + 1, r.end());
        std::vector<int8_t> row(n, 0);
        choose(i, 0, r[i], row, rest);
    }

    void choose(int i, int j, int need, std::vector<int8_t>& row, const std::vector<int>& rest) {
        if (stopped) return;
        if (need == 0) {
            for (int k = j; k < n; ++k) row[k] = 0;
            // feasibility of the remainder
            std::vector<int> cl = cols_left;
            for (int k = 0; k < n; ++k) cl[k] -= row[k];
            if (residual_feasible(rest, cl)) {
                rows.push_back(row);
                std::swap(cols_left, cl);
                recurse(i + 1);
                std::swap(cols_left, cl);
                rows.pop_back();
            }
            return;
        }
        if (n - j < need) return;
        // descending lex: try 1 first
        if (cols_left[j] > 0) {
            row[j] = 1;
            choose(i, j + 1, need - 1, row, rest);
            row[j] = 0;
        }
        if (n - j > need) choose(i, j + 1, need, row, rest);
    }
};

}  // namespace

void for_each_fixed_point(const MarginData& md, const std::function<bool(const BCT&)>& fn) {
    for (int x : md.r)
        if (x < 0) return;
    for (int x : md.c)
        if (x < 0) return;
    Walker w;
    w.m = md.m;
    w.n = md.n;
    w.r = md.r;
    w.cols_left = md.c;
    w.fn = &fn;
    if (!residual_feasible(md.r, md.c)) return;
    w.recurse(0);
}

std::vector<BCT> enumerate_fixed_points(const MarginData& md) {
    std::vector<BCT> out;
    for_each_fixed_point(md, [&](const BCT& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

long count_fixed_points(const MarginData& md) {
    long k = 0;
    for_each_fixed_point(md, [&](const BCT&) {
        ++k;
        return true;
    });
    return k;
}

namespace {

// V_i left of U_j?
bool ns5_left_of_d5(const BraneDiagram& d, int i, int j) {
    return d.ns5_position(i) < d.d5_position(j);
}

}  // namespace

TieDiagram bct_to_tie(const BCT& t, const BraneDiagram& d) {
    MarginData md = charges_and_margins(d);
    if (t.row_count() != md.m || t.col_count() != md.n) throw UsageError("BCT size mismatch");
    if (t.row_sums() != md.r || t.col_sums() != md.c) throw UsageError("BCT margins mismatch");
    TieDiagram td;
    for (int i = 1; i <= md.m; ++i) {
        for (int j = 1; j <= md.n; ++j) {
            bool above = ns5_left_of_d5(d, i, j);
            int v = t.at(i - 1, j - 1);
            bool tie = above ? (v == 1) : (v == 0);
            if (tie) td.ties.insert({i, j});
        }
    }
    return td;
}

BCT tie_to_bct(const TieDiagram& td, const BraneDiagram& d) {
    MarginData md = charges_and_margins(d);
    BCT t;
    t.rows.assign(md.m, std::vector<int8_t>(md.n, 0));
    for (const auto& [i, j] : td.ties) {
        if (i < 1 || i > md.m || j < 1 || j > md.n) throw UsageError("tie endpoint out of range");
    }
    for (int i = 1; i <= md.m; ++i) {
        for (int j = 1; j <= md.n; ++j) {
            bool above = ns5_left_of_d5(d, i, j);
            bool tie = td.ties.count({i, j}) > 0;
            t.rows[i - 1][j - 1] = static_cast<int8_t>(above == tie ? 1 : 0);
        }
    }
    // coverage integrity: every D3 brane covered exactly its multiplicity
    std::vector<int> cover(d.brane_count() + 1, 0);
    for (const auto& [i, j] : td.ties) {
        int a = d.ns5_position(i), b = d.d5_position(j);
        if (a > b) std::swap(a, b);
        for (int p = a; p < b; ++p) ++cover[p];
    }
    for (int p = 1; p < d.brane_count(); ++p)
        if (cover[p] != d.d3[p])
            throw IntegrityError("tie diagram does not cover the D3 multiplicities");
    return t;
}

std::vector<int> d3_from_bct(const BCT& t, const MarginData& md) {
    // integer points of the separating line, NW to SE; point p sits after
    // path-step p. Multiplicity = #(1s NE of P) + #(0s SW of P).
    // The separating line is the staircase determined by md.path: in row i
    // (top-down), the vertical segment sits after column path[i].
    std::vector<int> out;
    // integer points correspond to the brane sequence read from the path
    // (m+n+1 lattice points, of which the interior ones are the D3 branes)
    // point k: after seeing i NS5 rows and j D5 columns, i+j = k.
    std::vector<std::pair<int, int>> pts;  // (rows above, cols left)
    int i = 0, j = 0;
    pts.push_back({0, 0});
    while (i < md.m || j < md.n) {
        if (i < md.m && md.path[i] <= j) ++i;
        else ++j;
        pts.push_back({i, j});
    }
    for (const auto& [ri, cj] : pts) {
        int ones_ne = 0, zeros_sw = 0;
        for (int a = 0; a < md.m; ++a) {
            for (int b = 0; b < md.n; ++b) {
                bool ne = a < ri && b >= cj;
                bool sw = a >= ri && b < cj;
                if (ne && t.at(a, b) == 1) ++ones_ne;
                if (sw && t.at(a, b) == 0) ++zeros_sw;
            }
        }
        out.push_back(ones_ne + zeros_sw);
    }
    return out;
}

Butterfly butterfly_for(const BraneDiagram& d, int d5_index,
                        const std::vector<std::pair<int, int>>& ties_at_u) {
    Butterfly b;
    b.d5 = d5_index;
    int upos = d.d5_position(d5_index);
    int nb = d.brane_count();
    std::vector<int> cover(nb + 1, 0);  // interior D3 index 1..nb-1
    for (const auto& [i, j] : ties_at_u) {
        if (j != d5_index) throw UsageError("tie does not touch this D5 brane");
        int a = d.ns5_position(i), c = upos;
        if (a > c) std::swap(a, c);
        for (int p = a; p < c; ++p) ++cover[p];
    }
    int lo = 0, hi = -1;
    for (int p = 1; p < nb; ++p)
        if (cover[p] > 0) {
            if (hi < 0) lo = p;
            hi = p;
        }
    if (hi < 0) return b;  // empty tie set: no butterfly

    // chain tops left to right; the brane between D3 p and p+1 is brane p+1
    std::vector<int> top(hi + 1, 0);
    for (int p = lo; p < hi; ++p) {
        Brane between = d.branes[p];  // 1-based brane index p+1 -> branes[p]
        if (between == Brane::D5) {
            // bottom-aligned
            top[p + 1] = top[p] - cover[p] + cover[p + 1];
        } else if (p + 1 < upos) {
            // NS5 left of U: 45-degree top alignment
            top[p + 1] = top[p] + 1;
        } else {
            // NS5 right of U: top alignment
            top[p + 1] = top[p];
        }
    }
    // base level: top dot under U^- when present, else one below the bottom
    // dot under U^+
    int base;
    int uminus = upos - 1, uplus = upos;
    if (uminus >= lo && uminus <= hi && cover[uminus] > 0) {
        base = top[uminus];
        b.has_a_dot = true;
        b.a_d3 = uminus;
    } else {
        if (!(uplus >= lo && uplus <= hi && cover[uplus] > 0))
            throw IntegrityError("butterfly has no column adjacent to its D5 brane");
        base = top[uplus] - cover[uplus];
    }
    for (int p = lo; p <= hi; ++p) {
        if (cover[p] == 0) throw IntegrityError("butterfly coverage is not contiguous");
        b.columns.push_back({p, top[p] - base, cover[p]});
    }
    if (b.has_a_dot) b.a_level = 0;
    // b-arrow: the dot one above the a-level in the U^+ column
    if (uplus >= lo && uplus <= hi) {
        int t = top[uplus] - base;
        int bot = t - cover[uplus] + 1;
        if (bot <= 1 && 1 <= t) {
            b.has_b_dot = true;
            b.b_d3 = uplus;
            b.b_level = 1;
        }
    }
    // arrows
    auto col_of = [&](int p) -> const Butterfly::Column* {
        for (const auto& c : b.columns)
            if (c.d3 == p) return &c;
        return nullptr;
    };
    for (const auto& c : b.columns) {
        // B: downward arrows when a D5 brane is on either side of the column
        bool d5_side = (d.branes[c.d3 - 1] == Brane::D5) || (d.branes[c.d3] == Brane::D5);
        if (d5_side)
            for (int l = c.top; l > c.top - c.count + 1; --l)
                b.arrows.push_back({Butterfly::ArrowKind::B, c.d3, l, c.d3, l - 1});
        const Butterfly::Column* right = col_of(c.d3 + 1);
        if (!right) continue;
        Brane between = d.branes[c.d3];
        if (between == Brane::D5) {
            // A: leftward between dots at equal level
            int lo_l = std::max(c.top - c.count + 1, right->top - right->count + 1);
            int hi_l = std::min(c.top, right->top);
            for (int l = lo_l; l <= hi_l; ++l)
                b.arrows.push_back({Butterfly::ArrowKind::A, right->d3, l, c.d3, l});
        } else {
            // C: down-left (-1,-1); D: rightward
            for (int l = right->top; l > right->top - right->count; --l) {
                int tl = l - 1;
                if (tl >= c.top - c.count + 1 && tl <= c.top)
                    b.arrows.push_back({Butterfly::ArrowKind::C, right->d3, l, c.d3, tl});
            }
            for (int l = c.top; l > c.top - c.count; --l)
                if (l <= right->top && l >= right->top - right->count + 1)
                    b.arrows.push_back({Butterfly::ArrowKind::D, c.d3, l, right->d3, l});
        }
    }
    return b;
}

std::vector<Butterfly> build_butterfly(const TieDiagram& td, const BraneDiagram& d) {
    // validity of the tie diagram
    tie_to_bct(td, d);
    std::map<int, std::vector<std::pair<int, int>>> by_d5;
    for (const auto& tie : td.ties) by_d5[tie.second].push_back(tie);
    std::vector<Butterfly> out;
    for (auto& [j, ties] : by_d5) out.push_back(butterfly_for(d, j, ties));
    return out;
}

BCT map_hw(const BCT& t, const BraneDiagram& d, int pos) {
    hw_transition(d, pos);  // validates the move
    return t;  // identical filling of the table-with-margins
}

BCT map_mirror(const BCT& t) {
    BCT out;
    out.rows.assign(t.col_count(), std::vector<int8_t>(t.row_count(), 0));
    for (int i = 0; i < t.row_count(); ++i)
        for (int j = 0; j < t.col_count(); ++j)
            out.rows[j][i] = static_cast<int8_t>(1 - t.at(i, j));
    return out;
}

BCT map_tu(const BCT& t, int col) {
    if (col < 0 || col + 1 >= t.col_count()) throw UsageError("column out of range");
    BCT out = t;
    for (auto& row : out.rows) std::swap(row[col], row[col + 1]);
    return out;
}

BCT map_tv(const BCT& t, int row) {
    if (row < 0 || row + 1 >= t.row_count()) throw UsageError("row out of range");
    BCT out = t;
    std::swap(out.rows[row], out.rows[row + 1]);
    return out;
}

long chi_quiver(const QuiverSpec& q) {
    auto [r, c] = quiver_margins(q);
    for (int x : r)
        if (x < 0) return 0;
    for (int x : c)
        if (x < 0) return 0;
    MarginData md;
    md.m = static_cast<int>(r.size());
    md.n = static_cast<int>(c.size());
    md.r = r;
    md.c = c;
    md.path.assign(md.m, 0);  // the separating line is irrelevant for counting
    return count_fixed_points(md);
}

namespace {

// partitions at node i of an n-node quiver: cells (row,col) with
// 1 <= i + col - row <= n; enumerate their per-node box-count vectors
void partitions_at_node(int i, int n, int budget, std::vector<std::vector<int>>& out) {
    // rows are bounded: cell (r,1) needs i+1-r >= 1, so r <= i
    std::vector<int> shape;  // row lengths, weakly decreasing
    std::vector<int> counts(n, 0);
    std::function<void(int, int, int)> rec = [&](int row, int maxlen, int used) {
        out.push_back(counts);
        if (row > i) return;
        int cap = std::min(maxlen, n - i + row);
        for (int len = 1; len <= cap; ++len) {
            if (used + len > budget) break;
            // add a row of this length: cells (row, 1..len)
            bool ok = true;
            for (int cidx = 1; cidx <= len; ++cidx) {
                int node = i + cidx - row;
                if (node < 1 || node > n) { ok = false; break; }
                ++counts[node - 1];
            }
            if (ok) rec(row + 1, len, used + len);
            for (int cidx = 1; cidx <= len; ++cidx) {
                int node = i + cidx - row;
                if (node >= 1 && node <= n) --counts[node - 1];
            }
            if (!ok) break;
        }
    };
    rec(1, n, 0);  // row length capped later by per-row constraint
}

}  // namespace

long count_partition_codes(const QuiverSpec& q) {
    if (q.v.size() != q.w.size()) throw UsageError("quiver v/w length mismatch");
    int n = static_cast<int>(q.v.size());
    long total_boxes = std::accumulate(q.v.begin(), q.v.end(), 0L);
    // per (node, slot) the same menu of partitions applies; assemble counts by
    // dynamic programming over remaining per-node budgets
    std::map<std::vector<int>, long> state;
    std::vector<int> budget = q.v;
    state[budget] = 1;
    for (int i = 1; i <= n; ++i) {
        if (q.w[i - 1] == 0) continue;
        std::vector<std::vector<int>> menu;
        partitions_at_node(i, n, static_cast<int>(total_boxes), menu);
        // deduplicate count vectors arising from distinct partitions? No:
        // distinct partitions are distinct codes even with equal box counts.
        for (int slot = 0; slot < q.w[i - 1]; ++slot) {
            std::map<std::vector<int>, long> next;
            for (const auto& [left, ways] : state) {
                for (const auto& use : menu) {
                    std::vector<int> rem = left;
                    bool ok = true;
                    for (int k = 0; k < n; ++k) {
                        rem[k] -= use[k];
                        if (rem[k] < 0) { ok = false; break; }
                    }
                    if (ok) next[rem] += ways;
                }
            }
            state = std::move(next);
        }
    }
    std::vector<int> zero(n, 0);
    auto it = state.find(zero);
    return it == state.end() ? 0 : it->second;
}

}  // namespace bowlab
