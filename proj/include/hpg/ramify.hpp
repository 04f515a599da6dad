#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hpg/poly.hpp"

namespace hpg {

// Affine form u + v*p in one formal symbol (the free local exponent
// difference p, or the family index n for parametric patterns).
struct AffineForm {
    Rat u, v;

    AffineForm() : u(0), v(0) {}
    AffineForm(Rat cu) : u(std::move(cu)), v(0) {}
    AffineForm(Rat cu, Rat cv) : u(std::move(cu)), v(std::move(cv)) {}

    bool is_constant() const { return v == 0; }
    bool is_one() const { return v == 0 && u == 1; }
    Rat at(const Rat& value) const { return u + v * value; }
    AffineForm operator*(const Rat& s) const { return {u * s, v * s}; }
    AffineForm operator+(const AffineForm& o) const { return {u + o.u, v + o.v}; }
    AffineForm operator-(const AffineForm& o) const { return {u - o.u, v - o.v}; }
    bool operator==(const AffineForm& o) const { return u == o.u && v == o.v; }
    bool operator<(const AffineForm& o) const { return v != o.v ? v < o.v : u < o.u; }

    std::string str(const std::string& sym = "p") const;
    static AffineForm parse(const std::string& s, const std::string& sym = "p");
};

using ExponentTriple = std::array<AffineForm, 3>;

std::string triple_str(const ExponentTriple& t, const std::string& sym = "p");
ExponentTriple parse_triple(const std::string& s, const std::string& sym = "p");

// Three partitions of the degree, one per fiber over 0, 1, infinity (or over
// the three marked points in a declared order). Parts are kept descending.
struct BranchingPattern {
    int degree = 0;
    std::array<std::vector<int>, 3> fibers;

    int part_count() const;
    bool consistent() const;  // each fiber sums to the degree
    std::string str() const;
    static BranchingPattern parse(const std::string& s);
    bool operator==(const BranchingPattern& o) const;
};

// Parametric pattern in the family index n: each fiber is a list of
// (count, part) with affine count; degree is affine as well.
struct ParamPattern {
    AffineForm degree;
    std::array<std::vector<std::pair<AffineForm, int>>, 3> fibers;

    BranchingPattern instantiate(long n) const;
    std::string str() const;
    static ParamPattern parse(const std::string& s);
};

// Branching data of a covering over the three marked points.
struct RamificationReport {
    BranchingPattern pattern;
    // Critical points not above {0,1,inf}: root locus (or infinity) with the
    // local branching order of the map there.
    struct OutsidePoint {
        std::optional<Poly> locus;  // nullopt marks the point at infinity
        int order = 0;
    };
    std::vector<OutsidePoint> outside;
    int hurwitz_defect = 0;  // #points above the marked set minus (d+2)
};

RamificationReport analyze_covering(const RatFunc& f);

// Pulls the three below-exponent-differences through a branching pattern:
// each part m over a point with difference e contributes m*e. The singular
// values are those different from 1.
std::vector<AffineForm> transform_exponents(const BranchingPattern& p, const ExponentTriple& below);
std::vector<AffineForm> singular_values(const BranchingPattern& p, const ExponentTriple& below);

// d (e1+e2+e3-1) = e1'+e2'+e3'-1 as an identity of affine forms.
bool degree_formula_holds(const ExponentTriple& below, const ExponentTriple& above, long d);

// d = 6k/(6-k) (e0+e1+einf-1) for pull-backs from the standard equation with
// differences (1/2, 1/3, 1/k); the triple must be parameter-free.
struct KleinDegree {
    Rat value;
    bool integral;
};
KleinDegree klein_degree(int k, const ExponentTriple& above);

}  // namespace hpg
