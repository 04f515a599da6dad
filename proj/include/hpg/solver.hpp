#pragma once

#include <optional>

#include "hpg/ramify.hpp"

namespace hpg {

// All coverings of the projective line with the given branching pattern over
// (0, 1, infinity), up to Moebius changes of the source coordinate, with
// coefficients in the given field. An empty list certifies non-existence
// over that field (and, for conjugate-closed data, over its closure) for
// degree <= 6.
std::vector<RatFunc> solve_covering(const BranchingPattern& pattern, const FieldPtr& field);

// The six fractional-linear maps permuting {0, 1, infinity}.
std::vector<Moebius> target_permutations(const FieldPtr& f);

// Does a source Moebius m with f(m(x)) = g(x) exist? Decided via marked
// fiber points lying in the coefficient field.
bool moebius_equivalent_source(const RatFunc& f, const RatFunc& g);

// Equivalence up to Moebius on both sides, the target restricted to
// permutations of {0, 1, infinity}.
bool moebius_equivalent(const RatFunc& f, const RatFunc& g);

// Solves outer(H(x)) = f(x) for a rational H of degree deg f / deg outer;
// all solutions found over the coefficient field.
std::vector<RatFunc> solve_inner(const RatFunc& outer, const RatFunc& f);

struct Decomposition {
    size_t outer_index;  // index into the candidate list
    size_t inner_index;
    RatFunc inner;       // the concrete inner map with outer o inner ~ f
};

// All ways f = g o h with g, h Moebius-adjusted members of the candidate set.
std::vector<Decomposition> decompose_covering(const RatFunc& f,
                                              const std::vector<RatFunc>& candidates);

// Dense linear algebra over the coefficient field (used by the solver and
// rational reconstruction): solves M x = b, returns nullopt if inconsistent.
std::optional<std::vector<FE>> solve_linear(std::vector<std::vector<FE>> M, std::vector<FE> b);
// One nonzero kernel vector of M, if any.
std::optional<std::vector<FE>> kernel_vector(std::vector<std::vector<FE>> M, const FieldPtr& f);

}  // namespace hpg
