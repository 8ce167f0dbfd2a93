#include "bowlab/elliptic.hpp"

#include <algorithm>

namespace bowlab {

ThetaProduct theta_canonicalize(const SpacePtr& space, ThetaProduct t) {
    for (auto& arg : t.thetas) {
        if (arg.size() != static_cast<size_t>(space->size()))
            throw UsageError("theta argument over the wrong space");
        int lead = 0;
        bool all_zero = true;
        for (size_t i = 0; i < arg.size(); ++i) {
            if (arg[i] != 0) {
                lead = arg[i];
                all_zero = false;
                break;
            }
        }
        if (all_zero) throw UsageError("degenerate theta");
        if (lead < 0) {
            for (auto& e : arg) e = -e;
            t.sign = -t.sign;
        }
    }
    std::sort(t.thetas.begin(), t.thetas.end());
    return t;
}

ThetaProduct mirror_swap(const SpacePtr& from, const SpacePtr& to, const ThetaProduct& t) {
    int n = from->u_count();   // -> v' count
    int m = from->kahler_count();  // -> u' count
    if (to->u_count() != m || to->kahler_count() != n)
        throw UsageError("mirror_swap target space has wrong variable counts");
    ThetaProduct out;
    out.sign = t.sign;
    for (const auto& arg : t.thetas) {
        ExpVec e(to->size(), 0);
        for (int i = 1; i <= n; ++i) e[to->kahler_index(i)] = arg[from->u_index(i)];
        for (int j = 1; j <= m; ++j) e[to->u_index(j)] = arg[from->kahler_index(j)];
        e[to->h_index()] = -arg[from->h_index()];
        out.thetas.push_back(std::move(e));
    }
    return theta_canonicalize(to, std::move(out));
}

bool theta_equal(const ThetaProduct& a, const ThetaProduct& b) {
    return a.sign == b.sign && a.thetas == b.thetas;
}

EllipticReport check_3d_identity(const EllipticTable& s, const EllipticTable& sp) {
    EllipticReport rep;
    size_t n = s.entries.size();
    if (sp.entries.size() != n) throw UsageError("elliptic tables differ in size");
    for (size_t k = 0; k < n; ++k) {
        if (s.entries[k].size() != n || sp.entries[k].size() != n)
            throw UsageError("elliptic tables must be square");
    }
    for (size_t k = 0; k < n; ++k) {
        for (size_t l = 0; l < n; ++l) {
            const auto& lhs = s.entries[k][l];
            const auto& rhs = sp.entries[l][k];
            std::string where = "(" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ")";
            if (!lhs.has_value() != !rhs.has_value()) {
                rep.ok = false;
                rep.mismatches.push_back("zero pattern differs at " + where);
                continue;
            }
            if (!lhs.has_value()) continue;
            ThetaProduct mapped = mirror_swap(s.space, sp.space, *lhs);
            ThetaProduct expect = theta_canonicalize(sp.space, *rhs);
            // sign (-1)^{k+l+1} with 1-based indices
            if (((k + 1) + (l + 1) + 1) % 2 == 1) expect.sign = -expect.sign;
            if (!theta_equal(mapped, expect)) {
                rep.ok = false;
                rep.mismatches.push_back("entry mismatch at " + where);
            }
        }
    }
    return rep;
}

}  // namespace bowlab
