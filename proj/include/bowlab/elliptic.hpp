#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bowlab/algebra.hpp"

namespace bowlab {

/// Formal product sign * prod theta(argument monomial). Arguments live over a
/// multiplicative space of u's, v's (Kahler) and h; theta is treated as an
/// opaque odd function: theta(1/x) = -theta(x) is the only identity used.
struct ThetaProduct {
    int sign = 1;
    std::vector<ExpVec> thetas;  // exponent vectors over (u..., v..., h)
};

/// Entries are theta products or zero (nullopt).
struct EllipticTable {
    SpacePtr space;  // u's, v's, h; no roots, no eps
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<ThetaProduct>>> entries;
};

/// Canonical form: every argument's first variable (global order) appears with
/// a positive exponent (flipping via oddness), factors sorted.
/// theta(1) is a usage error ("degenerate theta").
ThetaProduct theta_canonicalize(const SpacePtr& space, ThetaProduct t);

/// eq-(3d) substitution h <-> h^{-1}, u_i <-> v'_i, v_j <-> u'_j: maps a theta
/// product over (u[n], v[m], h) into one over (u'[m], v'[n], h), canonicalized.
ThetaProduct mirror_swap(const SpacePtr& from, const SpacePtr& to, const ThetaProduct& t);

struct EllipticReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// Checks S_{kl} |-> (-1)^{k+l+1} S'_{lk} under the mirror swap for all k,l.
EllipticReport check_3d_identity(const EllipticTable& s, const EllipticTable& sp);

bool theta_equal(const ThetaProduct& a, const ThetaProduct& b);

}  // namespace bowlab
