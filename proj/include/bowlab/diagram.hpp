#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bowlab/algebra.hpp"

namespace bowlab {

enum class Brane : uint8_t { NS5, D5 };

struct ParseError : UsageError {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : UsageError(msg + " at byte " + std::to_string(off)), offset(off) {}
};

/// Ordered 5-brane sequence with D3 multiplicities. d3 has branes.size()+1
/// entries; d3.front() == d3.back() == 0 always (the formal outer D3 branes).
struct BraneDiagram {
    std::vector<Brane> branes;
    std::vector<int> d3;

    int brane_count() const { return static_cast<int>(branes.size()); }
    int ns5_count() const;
    int d5_count() const;
    /// 1-based brane position of the i-th NS5 / D5 (i is 1-based).
    int ns5_position(int i) const;
    int d5_position(int j) const;
    /// Multiplicities left/right of the brane at 1-based position p.
    int mult_left(int p) const { return d3.at(p - 1); }
    int mult_right(int p) const { return d3.at(p); }

    friend bool operator==(const BraneDiagram& a, const BraneDiagram& b) {
        return a.branes == b.branes && a.d3 == b.d3;
    }
};

/// Margin vectors and the separating line. path[i] = number of D5 branes left
/// of the (i+1)-th NS5 brane.
struct MarginData {
    int m = 0;
    int n = 0;
    std::vector<int> r;
    std::vector<int> c;
    std::vector<int> path;

    friend bool operator==(const MarginData& a, const MarginData& b) {
        return a.m == b.m && a.n == b.n && a.r == b.r && a.c == b.c && a.path == b.path;
    }
};

struct QuiverSpec {
    std::vector<int> v;
    std::vector<int> w;
};

BraneDiagram parse_diagram(const std::string& text);
std::string print_diagram(const BraneDiagram& d);

MarginData charges_and_margins(const BraneDiagram& d);
/// Inverse of charges_and_margins (Lemma: the margins and path determine the
/// diagram uniquely).
BraneDiagram reconstruct_diagram(const MarginData& md);

/// Gale-Ryser feasibility: does a 0/1 matrix with row sums r, column sums c
/// exist? Negative entries are a usage error.
bool validate_margins(const MarginData& md);
bool gale_ryser(std::vector<int> rows, std::vector<int> cols);

int dimension(const BraneDiagram& d);

BraneDiagram mirror_dual(const BraneDiagram& d);

/// Hanany-Witten transition at the adjacent opposite-type pair whose left
/// brane sits at 0-based index pos.
BraneDiagram hw_transition(const BraneDiagram& d, int pos);

struct SeparatedForm {
    BraneDiagram diagram;
    std::vector<int> moves;  // hw positions applied, in order
};
SeparatedForm separated_form(const BraneDiagram& d);
bool is_separated(const BraneDiagram& d);

struct Classification {
    bool balanced = false;
    bool cobalanced = false;
    bool hw_balanced = false;    // HW-equivalent to a balanced diagram
    bool hw_cobalanced = false;  // HW-equivalent to a co-balanced diagram
};
Classification classify(const BraneDiagram& d);

BraneDiagram quiver_to_diagram(const QuiverSpec& q);
/// Margin vectors of Naka(Q(v,w)) as a bow variety:
/// r_i = v_i - v_{i-1} + sum_{j<i} w_j (length n+1), c = (n^{w_1},...,1^{w_n}).
std::pair<std::vector<int>, std::vector<int>> quiver_margins(const QuiverSpec& q);
/// Mirror-duality criterion r(v,w)+c(v',w') = (b^a), c(v,w)+r(v',w') = (a^b).
bool check_quiver_duality(const QuiverSpec& q, const QuiverSpec& qp);
/// The quiver dual to T*F_lambda (lambda weakly increasing).
QuiverSpec dual_flag_quiver(const std::vector<int>& lambda);
/// The T*F_lambda quiver itself: v = partial sums, w = (0,..,0,total).
QuiverSpec flag_quiver(const std::vector<int>& lambda);

/// Same-type transition ((TU) for D5 pairs, (TV) for NS5 pairs) at 0-based pos.
BraneDiagram tu_tv_transition(const BraneDiagram& d, int pos);

/// Deterministic pseudo-random valid diagram (margins feasible), for tests.
BraneDiagram random_valid_diagram(uint64_t seed, int max_branes, int max_mult);

}  // namespace bowlab
