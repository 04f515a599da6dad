#pragma once

#include <array>
#include <string>
#include <vector>

#include "hpg/ramify.hpp"

namespace hpg {

// N restricted local exponent differences 1/k_1..1/k_N below; the remaining
// entries of the triple stay free.
struct RestrictionQuery {
    std::vector<int> ks;  // size N in 0..3
    long degree_bound = 24;
};

// All degrees d <= bound with d - sum floor(d/k_j) <= 1 and d >= max k_j.
std::vector<long> admissible_degrees(const RestrictionQuery& q);

struct Candidate {
    enum class Status { CoveringKnown, NoCovering, Undecided };

    ExponentTriple below;  // order: restricted points first, then free ones
    ExponentTriple above;
    long degree = 0;
    std::vector<BranchingPattern> patterns;  // fibers in the `below` order
    Status status = Status::Undecided;
    std::string note;  // composition info or provenance of the status
};

// Step 2-3 of the classification scheme: all branching patterns giving a
// transformed equation with exactly three singular points. Supports N = 2
// and N = 3; the free exponent difference is the symbol p.
std::vector<Candidate> enumerate_candidates(const RestrictionQuery& q);

// (k1,k2,k3,d) tuples passing the four hyperbolic inequalities.
struct HyperbolicTuple {
    int k1, k2, k3;
    long d;
};
std::vector<HyperbolicTuple> hyperbolic_bounds();

// Parametric self-transformation families of the elliptic-integral triples.
struct ParamFamilyRow {
    ExponentTriple below, above;
    AffineForm degree;  // in the family index n
    ParamPattern pattern;
};
const std::vector<ParamFamilyRow>& elliptic_family_rows();

// The degree-10 (1/2,1/2,1/2) <- (2,2,2) candidate whose non-existence is
// recorded from outside the solver's reach.
Candidate trivial_monodromy_exception();

std::string status_str(Candidate::Status s);

}  // namespace hpg
