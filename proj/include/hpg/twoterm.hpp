#pragma once

#include <optional>

#include "hpg/series.hpp"

namespace hpg {

// One instance of the basic two-term identity
//   2F1(tilde; x) = theta(x) * 2F1(params; phi(x)),
// with everything over a common coefficient field (possibly with a formal
// parameter).
struct TwoTermIdentity {
    HpgParams tilde;
    HpgParams params;
    RatFunc phi;
    RadicalExpr theta;
};

// Index of the first disagreeing series coefficient below `order`+1, or -1
// when the identity holds through that order.
int two_term_mismatch(const TwoTermIdentity& id, int order);

// The companion identity with the exponents at x = 0 and z = 0 swapped; not
// generated when 2-C or 2-tilde.C degenerates.
struct CompanionCheck {
    bool applicable = false;
    int mismatch = -1;
};
CompanionCheck companion_mismatch(const TwoTermIdentity& id, int order);

// Derives tilde and theta from the covering and the parameters below, by
// transferring local exponents through the fibers; requires the singular
// points upstairs to be exactly 0, 1, infinity. The result is certified by a
// series check before it is returned.
std::optional<TwoTermIdentity> derive_two_term(const RatFunc& phi, const HpgParams& below,
                                               int check_order = 16);

}  // namespace hpg
