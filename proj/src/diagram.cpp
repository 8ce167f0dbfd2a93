#include "bowlab/diagram.hpp"

#include <algorithm>
#include <numeric>

namespace bowlab {

int BraneDiagram::ns5_count() const {
    int k = 0;
    for (Brane b : branes)
        if (b == Brane::NS5) ++k;
    return k;
}

int BraneDiagram::d5_count() const {
    return brane_count() - ns5_count();
}

int BraneDiagram::ns5_position(int i) const {
    int seen = 0;
    for (int p = 1; p <= brane_count(); ++p)
        if (branes[p - 1] == Brane::NS5 && ++seen == i) return p;
    throw UsageError("NS5 index out of range");
}

int BraneDiagram::d5_position(int j) const {
    int seen = 0;
    for (int p = 1; p <= brane_count(); ++p)
        if (branes[p - 1] == Brane::D5 && ++seen == j) return p;
    throw UsageError("D5 index out of range");
}

BraneDiagram parse_diagram(const std::string& text) {
    if (text.empty()) throw ParseError("empty diagram", 0);
    BraneDiagram d;
    d.d3.push_back(0);
    size_t i = 0;
    while (true) {
        if (i >= text.size()) throw ParseError("expected a brane", i);
        char ch = text[i];
        if (ch == '/') d.branes.push_back(Brane::NS5);
        else if (ch == '\\' || ch == '|') d.branes.push_back(Brane::D5);
        else if (ch == '-') throw ParseError("negative multiplicity", i);
        else throw ParseError(std::string("unexpected character '") + ch + "'", i);
        ++i;
        if (i >= text.size()) break;
        if (text[i] == '-') throw ParseError("negative multiplicity", i);
        if (text[i] < '0' || text[i] > '9')
            if (text[i] == '/' || text[i] == '\\' || text[i] == '|')
                throw ParseError("missing multiplicity between branes", i);
        if (text[i] < '0' || text[i] > '9')
            throw ParseError(std::string("unexpected character '") + text[i] + "'", i);
        long v = 0;
        size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            v = v * 10 + (text[i] - '0');
            if (v > 1000000) throw ParseError("multiplicity too large", start);
            ++i;
        }
        d.d3.push_back(static_cast<int>(v));
    }
    d.d3.push_back(0);
    return d;
}

std::string print_diagram(const BraneDiagram& d) {
    std::string out;
    for (int p = 1; p <= d.brane_count(); ++p) {
        out += (d.branes[p - 1] == Brane::NS5) ? '/' : '\\';
        if (p < d.brane_count()) out += std::to_string(d.d3[p]);
    }
    return out;
}

MarginData charges_and_margins(const BraneDiagram& d) {
    MarginData md;
    md.m = d.ns5_count();
    md.n = d.d5_count();
    int d5_left = 0;
    for (int p = 1; p <= d.brane_count(); ++p) {
        if (d.branes[p - 1] == Brane::NS5) {
            md.r.push_back(d.mult_right(p) - d.mult_left(p) + d5_left);
            md.path.push_back(d5_left);
        } else {
            ++d5_left;
        }
    }
    int ns5_right = md.m;
    // second pass: NS5 branes to the right of each D5
    int ns5_seen = 0;
    for (int p = 1; p <= d.brane_count(); ++p) {
        if (d.branes[p - 1] == Brane::NS5) {
            ++ns5_seen;
        } else {
            md.c.push_back(d.mult_left(p) - d.mult_right(p) + (ns5_right - ns5_seen));
        }
    }
    return md;
}

BraneDiagram reconstruct_diagram(const MarginData& md) {
    if (static_cast<int>(md.r.size()) != md.m || static_cast<int>(md.c.size()) != md.n ||
        static_cast<int>(md.path.size()) != md.m)
        throw UsageError("inconsistent margin data");
    long sr = std::accumulate(md.r.begin(), md.r.end(), 0L);
    long sc = std::accumulate(md.c.begin(), md.c.end(), 0L);
    if (sr != sc) throw UsageError("margin sums differ");
    for (size_t i = 1; i < md.path.size(); ++i)
        if (md.path[i] < md.path[i - 1]) throw UsageError("path not monotone");
    BraneDiagram d;
    // interleave: NS5 i comes after path[i] D5 branes
    int ns5 = 0, d5 = 0;
    while (ns5 < md.m || d5 < md.n) {
        if (ns5 < md.m && md.path[ns5] <= d5) {
            d.branes.push_back(Brane::NS5);
            ++ns5;
        } else {
            d.branes.push_back(Brane::D5);
            ++d5;
        }
    }
    // multiplicities left to right from the charge formulas
    d.d3.assign(d.brane_count() + 1, 0);
    int ir = 0, ic = 0, d5_left = 0, ns5_seen = 0;
    for (int p = 1; p <= d.brane_count(); ++p) {
        if (d.branes[p - 1] == Brane::NS5) {
            d.d3[p] = d.d3[p - 1] + md.r[ir++] - d5_left;
            ++ns5_seen;
        } else {
            d.d3[p] = d.d3[p - 1] - md.c[ic++] + (md.m - ns5_seen);
            ++d5_left;
        }
        if (d.d3[p] < 0) throw UsageError("margins do not reconstruct a diagram");
    }
    if (d.d3.back() != 0) throw UsageError("margins do not reconstruct a diagram");
    return d;
}

bool gale_ryser(std::vector<int> rows, std::vector<int> cols) {
    for (int x : rows)
        if (x < 0) throw UsageError("negative margin");
    for (int x : cols)
        if (x < 0) throw UsageError("negative margin");
    long sr = std::accumulate(rows.begin(), rows.end(), 0L);
    long sc = std::accumulate(cols.begin(), cols.end(), 0L);
    if (sr != sc) return false;
    std::sort(rows.begin(), rows.end(), std::greater<int>());
    std::sort(cols.begin(), cols.end(), std::greater<int>());
    // conjugate of rows, padded to cols length
    size_t len = std::max(cols.size(), rows.empty() ? size_t{0} : static_cast<size_t>(rows[0]));
    len = std::max(len, cols.size());
    std::vector<long> conj(len + 1, 0);
    for (size_t j = 0; j < len; ++j) {
        long cnt = 0;
        for (int x : rows)
            if (x > static_cast<int>(j)) ++cnt;
        conj[j] = cnt;
    }
    long lhs = 0, rhs = 0;
    for (size_t k = 0; k < cols.size(); ++k) {
        lhs += cols[k];
        rhs += conj[k];
        if (lhs > rhs) return false;
    }
    return true;
}

bool validate_margins(const MarginData& md) {
    return gale_ryser(md.r, md.c);
}

int dimension(const BraneDiagram& d) {
    long total = 0;
    for (int p = 1; p <= d.brane_count(); ++p) {
        long dl = d.mult_left(p), dr = d.mult_right(p);
        if (d.branes[p - 1] == Brane::D5)
            total += (dl + 1) * dl + (dr + 1) * dr;
        else
            total += 2 * dl * dr;
    }
    for (int x : d.d3) total -= 2L * x * x;
    return static_cast<int>(total);
}

BraneDiagram mirror_dual(const BraneDiagram& d) {
    BraneDiagram out = d;
    for (auto& b : out.branes) b = (b == Brane::NS5) ? Brane::D5 : Brane::NS5;
    return out;
}

BraneDiagram hw_transition(const BraneDiagram& d, int pos) {
    if (pos < 0 || pos + 1 >= d.brane_count()) throw UsageError("hw position out of range");
    Brane a = d.branes[pos], b = d.branes[pos + 1];
    if (a == b)
        throw UsageError("same-type pair: use tu_tv_transition");
    BraneDiagram out = d;
    std::swap(out.branes[pos], out.branes[pos + 1]);
    int d1 = d.d3[pos], d2 = d.d3[pos + 1], d3v = d.d3[pos + 2];
    int nd = d1 + d3v + 1 - d2;
    if (nd < 0)
        throw DomainError("Hanany-Witten transition produced a negative multiplicity "
                          "(diagram violates the BCT-existence assumption)");
    out.d3[pos + 1] = nd;
    return out;
}

bool is_separated(const BraneDiagram& d) {
    bool seen_d5 = false;
    for (Brane b : d.branes) {
        if (b == Brane::D5) seen_d5 = true;
        else if (seen_d5) return false;
    }
    return true;
}

SeparatedForm separated_form(const BraneDiagram& d) {
    SeparatedForm out;
    out.diagram = d;
    while (true) {
        int pos = -1;
        for (int p = 0; p + 1 < out.diagram.brane_count(); ++p) {
            if (out.diagram.branes[p] == Brane::D5 && out.diagram.branes[p + 1] == Brane::NS5) {
                pos = p;
                break;
            }
        }
        if (pos < 0) break;
        out.diagram = hw_transition(out.diagram, pos);
        out.moves.push_back(pos);
    }
    return out;
}

Classification classify(const BraneDiagram& d) {
    Classification c;
    c.balanced = true;
    c.cobalanced = true;
    for (int p = 1; p <= d.brane_count(); ++p) {
        if (d.branes[p - 1] == Brane::NS5) {
            if (d.mult_left(p) != d.mult_right(p)) c.balanced = false;
        } else {
            if (d.mult_left(p) != d.mult_right(p)) c.cobalanced = false;
        }
    }
    MarginData md = charges_and_margins(d);
    c.hw_cobalanced = std::is_sorted(md.c.begin(), md.c.end(), std::greater<int>());
    c.hw_balanced = std::is_sorted(md.r.begin(), md.r.end());
    return c;
}

BraneDiagram quiver_to_diagram(const QuiverSpec& q) {
    if (q.v.size() != q.w.size()) throw UsageError("quiver v/w length mismatch");
    for (int x : q.v)
        if (x < 0) throw UsageError("negative dimension vector entry");
    for (int x : q.w)
        if (x < 0) throw UsageError("negative framing vector entry");
    BraneDiagram d;
    d.d3.push_back(0);
    for (size_t i = 0; i < q.v.size(); ++i) {
        d.branes.push_back(Brane::NS5);
        d.d3.push_back(q.v[i]);
        for (int k = 0; k < q.w[i]; ++k) {
            d.branes.push_back(Brane::D5);
            d.d3.push_back(q.v[i]);
        }
    }
    d.branes.push_back(Brane::NS5);
    d.d3.push_back(0);
    return d;
}

std::pair<std::vector<int>, std::vector<int>> quiver_margins(const QuiverSpec& q) {
    if (q.v.size() != q.w.size()) throw UsageError("quiver v/w length mismatch");
    int n = static_cast<int>(q.v.size());
    std::vector<int> r, c;
    int wsum = 0;
    for (int i = 1; i <= n + 1; ++i) {
        int vi = (i <= n) ? q.v[i - 1] : 0;
        int vim1 = (i >= 2) ? q.v[i - 2] : 0;
        r.push_back(vi - vim1 + wsum);
        if (i <= n) wsum += q.w[i - 1];
    }
    for (int i = 1; i <= n; ++i)
        for (int k = 0; k < q.w[i - 1]; ++k) c.push_back(n - i + 1);
    return {r, c};
}

bool check_quiver_duality(const QuiverSpec& q, const QuiverSpec& qp) {
    auto [r, c] = quiver_margins(q);
    auto [rp, cp] = quiver_margins(qp);
    long a = static_cast<long>(q.v.size()) + 1;
    long b = static_cast<long>(qp.v.size()) + 1;
    long wsum = std::accumulate(q.w.begin(), q.w.end(), 0L);
    long wpsum = std::accumulate(qp.w.begin(), qp.w.end(), 0L);
    if (wsum != b || wpsum != a) throw UsageError("framing totals do not match node counts");
    if (r.size() != cp.size() || c.size() != rp.size()) return false;
    for (size_t i = 0; i < r.size(); ++i)
        if (r[i] + cp[i] != static_cast<int>(b)) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] + rp[i] != static_cast<int>(a)) return false;
    return true;
}

QuiverSpec flag_quiver(const std::vector<int>& lambda) {
    QuiverSpec q;
    int sum = 0;
    for (size_t i = 0; i + 1 < lambda.size(); ++i) {
        sum += lambda[i];
        q.v.push_back(sum);
        q.w.push_back(0);
    }
    if (!lambda.empty()) {
        sum += lambda.back();
        if (!q.w.empty()) {
            q.w.back() = sum;
        } else {
            // single-part flag: use the 1-node quiver with v = 0, w = total
            q.v.push_back(0);
            q.w.push_back(sum);
        }
    }
    return q;
}

QuiverSpec dual_flag_quiver(const std::vector<int>& lambda) {
    for (size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] < lambda[i - 1]) throw UsageError("lambda must be weakly increasing");
    for (int x : lambda)
        if (x < 0) throw UsageError("lambda must be non-negative");
    int N = static_cast<int>(lambda.size());
    std::vector<int> mu;
    for (int j = 1; j <= N; ++j) {
        int prev = (j >= 2) ? lambda[j - 2] : 0;
        for (int t = 0; t < lambda[j - 1] - prev; ++t) mu.push_back(N - j);
    }
    // k = sum of the first lambda_N entries of mu
    long k = std::accumulate(mu.begin(), mu.end(), 0L);
    for (int t = 0; t < k - 1; ++t) mu.push_back(-1);
    QuiverSpec q;
    int sum = 0;
    for (int x : mu) {
        sum += x;
        q.v.push_back(sum);
    }
    q.w.assign(q.v.size(), 0);
    for (int j = 0; j < N; ++j) {
        int idx = lambda[j];
        if (idx >= 1 && idx <= static_cast<int>(q.w.size())) q.w[idx - 1] += 1;
    }
    return q;
}

BraneDiagram tu_tv_transition(const BraneDiagram& d, int pos) {
    if (pos < 0 || pos + 1 >= d.brane_count()) throw UsageError("transition position out of range");
    if (d.branes[pos] != d.branes[pos + 1])
        throw UsageError("opposite-type pair: use hw_transition");
    int d1 = d.d3[pos], d2 = d.d3[pos + 1], d3v = d.d3[pos + 2];
    int nd = d1 + d3v - d2;
    if (nd < 0) throw DomainError("invalid same-type transition (negative multiplicity)");
    BraneDiagram out = d;
    out.d3[pos + 1] = nd;
    return out;
}

BraneDiagram random_valid_diagram(uint64_t seed, int max_branes, int max_mult) {
    auto next = [&seed]() {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        return seed >> 33;
    };
    for (int attempt = 0; attempt < 4096; ++attempt) {
        int nb = 2 + static_cast<int>(next() % std::max(1, max_branes - 1));
        BraneDiagram d;
        d.d3.assign(nb + 1, 0);
        bool has_ns5 = false, has_d5 = false;
        for (int p = 0; p < nb; ++p) {
            bool ns5 = next() % 2 == 0;
            d.branes.push_back(ns5 ? Brane::NS5 : Brane::D5);
            has_ns5 |= ns5;
            has_d5 |= !ns5;
        }
        if (!has_ns5 || !has_d5) continue;
        for (int p = 1; p < nb; ++p) d.d3[p] = static_cast<int>(next() % (max_mult + 1));
        MarginData md = charges_and_margins(d);
        bool nonneg = true;
        for (int x : md.r) nonneg &= x >= 0;
        for (int x : md.c) nonneg &= x >= 0;
        if (!nonneg) continue;
        if (!validate_margins(md)) continue;
        return d;
    }
    throw DomainError("random_valid_diagram: exhausted attempts");
}

}  // namespace bowlab
