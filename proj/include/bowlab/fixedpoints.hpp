#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "bowlab/diagram.hpp"

namespace bowlab {

/// 0/1 matrix with prescribed margins; rows indexed by NS5, columns by D5.
struct BCT {
    std::vector<std::vector<int8_t>> rows;

    int row_count() const { return static_cast<int>(rows.size()); }
    int col_count() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
    int at(int i, int j) const { return rows.at(i).at(j); }

    std::vector<int> row_sums() const;
    std::vector<int> col_sums() const;

    friend bool operator==(const BCT& a, const BCT& b) { return a.rows == b.rows; }
    friend bool operator<(const BCT& a, const BCT& b) { return a.rows < b.rows; }
};

/// Set of (NS5 index, D5 index) pairs, 1-based, covering each D3 brane as
/// many times as its multiplicity.
struct TieDiagram {
    std::set<std::pair<int, int>> ties;
};

/// All BCTs with the given margins, emitted in descending row-major
/// lexicographic order (the order the reference tables use). Deterministic.
std::vector<BCT> enumerate_fixed_points(const MarginData& md);
/// Count without materializing.
long count_fixed_points(const MarginData& md);
/// Streaming variant; callback return false stops the walk.
void for_each_fixed_point(const MarginData& md, const std::function<bool(const BCT&)>& fn);

TieDiagram bct_to_tie(const BCT& t, const BraneDiagram& d);
BCT tie_to_bct(const TieDiagram& td, const BraneDiagram& d);

/// Multiplicity of the D3 brane at integer point p (0..m+n) of the separating
/// line, read off any BCT: #(1s NE of P) + #(0s SW of P).
std::vector<int> d3_from_bct(const BCT& t, const MarginData& md);

/// One butterfly per D5 brane with a nonempty tie set. Dots are addressed by
/// (D3 index, level); levels are normalized so the a-dot sits at level 0.
struct Butterfly {
    int d5;  // 1-based D5 index
    struct Column {
        int d3;     // 1-based interior D3 index (brane gap)
        int top;    // level of the top dot
        int count;  // number of dots; dots occupy levels top-count+1 .. top
    };
    std::vector<Column> columns;

    enum class ArrowKind : uint8_t { A, B, C, D };
    struct Arrow {
        ArrowKind kind;
        int from_d3, from_level;
        int to_d3, to_level;
    };
    std::vector<Arrow> arrows;

    // a: C_U -> top dot under U^-; absent when that column is empty.
    bool has_a_dot = false;
    int a_d3 = 0, a_level = 0;
    // b: dot one above the a-level under U^+ -> C_U, when such a dot exists.
    bool has_b_dot = false;
    int b_d3 = 0, b_level = 0;
};

std::vector<Butterfly> build_butterfly(const TieDiagram& td, const BraneDiagram& d);
/// The single butterfly of one D5 brane, from the ties incident to it.
Butterfly butterfly_for(const BraneDiagram& d, int d5_index,
                        const std::vector<std::pair<int, int>>& ties_at_u);

/// Fixed-point transport. HW keeps the matrix identical; mirror transposes and
/// negates; (TU)/(TV) swap the two columns/rows.
BCT map_hw(const BCT& t, const BraneDiagram& d, int pos);
BCT map_mirror(const BCT& t);
BCT map_tu(const BCT& t, int col);
BCT map_tv(const BCT& t, int row);

/// Euler characteristic (torus fixed point count) of Naka(Q(v,w)) via the
/// BCT formula. Infeasible margins give 0.
long chi_quiver(const QuiverSpec& q);

/// Number of fixed-point codes as tuples of partitions (one ordered w_i-tuple
/// per node; the cell (r,c) of a partition at node i covers node i+c-r, all
/// cells must stay inside 1..n, and the total over node j is v_j).
long count_partition_codes(const QuiverSpec& q);

}  // namespace bowlab
