#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpg/solver.hpp"

using namespace hpg;

namespace {
RatFunc RF(const FieldPtr& f, std::vector<long> num, std::vector<long> den) {
    std::vector<Rat> n(num.begin(), num.end()), d(den.begin(), den.end());
    return RatFunc(Poly::from_rats(f, n), Poly::from_rats(f, d));
}
}  // namespace

TEST_CASE("quadratic covering from its pattern") {
    auto f = Field::q();
    auto sols = solve_covering(BranchingPattern::parse("1+1=2=2"), f);
    REQUIRE(!sols.empty());
    RatFunc quad = RF(f, {0, 4, -4}, {1});
    bool hit = false;
    for (auto& s : sols) hit = hit || moebius_equivalent_source(s, quad);
    CHECK(hit);
    CHECK(sols.size() == 1);  // unique up to source Moebius
}

TEST_CASE("goursat cubic") {
    auto f = Field::q();
    // positional form of the printed representative x(9-x)^2/(3+x)^3
    auto sols = solve_covering(BranchingPattern::parse("2+1=2+1=3"), f);
    REQUIRE(sols.size() == 1);
    Poly num = Poly::from_rats(f, {Rat(0), Rat(81), Rat(-18), Rat(1)});
    Poly den = Poly::from_rats(f, {Rat(27), Rat(27), Rat(9), Rat(1)});
    CHECK(moebius_equivalent_source(sols[0], RatFunc(num, den)));
    // the table-order variant of the same class, up to both-sided Moebius
    auto sols2 = solve_covering(BranchingPattern::parse("2+1=3=2+1"), f);
    REQUIRE(sols2.size() == 1);
    CHECK(moebius_equivalent(sols2[0], RatFunc(num, den)));
}

TEST_CASE("cubic with three simple points upstairs") {
    auto f = Field::q();
    auto sols = solve_covering(BranchingPattern::parse("3=3=1+1+1"), f);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].map_degree() == 3);
    // x^3/(3x^2-3x+1); equivalent to the printed Q(w) covering after moving
    // the three simple poles to 0, 1, infinity
    CHECK(sols[0] == RF(f, {0, 0, 0, 1}, {1, -3, 3}));
    // and the printed form over Q(w) is source-equivalent
    auto fw = Field::of(NumberField::make("w", {Rat(1), Rat(1), Rat(1)}));
    FE w = FE::generator(fw);
    Poly num = Poly(fw, {FE::of(fw, 0), (2 * w + 1) * 3}) * Poly(fw, {FE::of(fw, -1), FE::of(fw, 1)});
    Poly den = Poly(fw, {w, FE::of(fw, 1)}).pow(3);
    auto solsw = solve_covering(BranchingPattern::parse("1+1+1=3=3"), fw);
    bool hit = false;
    for (auto& s : solsw) hit = hit || moebius_equivalent_source(s, RatFunc(num, den));
    CHECK(hit);
}

TEST_CASE("indecomposable quartic") {
    auto f = Field::q();
    auto sols = solve_covering(BranchingPattern::parse("3+1=2+2=3+1"), f);
    REQUIRE(!sols.empty());
    // 64 x^3 (1-x) / (9-8x)^3
    Poly num = Poly::from_rats(f, {Rat(0), Rat(0), Rat(0), Rat(64), Rat(-64)});
    Poly den = Poly::from_rats(f, {Rat(729), Rat(-1944), Rat(1728), Rat(-512)});
    RatFunc quart(num, den);
    bool hit = false;
    for (auto& s : sols) hit = hit || moebius_equivalent_source(s, quart);
    CHECK(hit);
    CHECK(sols.size() == 1);
    // each solution re-analyzes to the requested pattern
    for (auto& s : sols) CHECK(analyze_covering(s).pattern == BranchingPattern::parse("3+1=2+2=3+1"));
}

TEST_CASE("no covering for 2+2=3+1=2+2") {
    auto f = Field::q();
    CHECK(solve_covering(BranchingPattern::parse("2+2=3+1=2+2"), f).empty());
    // also over the quadratic fields used elsewhere in the catalog
    auto fw = Field::of(NumberField::make("w", {Rat(1), Rat(1), Rat(1)}));
    CHECK(solve_covering(BranchingPattern::parse("2+2=3+1=2+2"), fw).empty());
}

TEST_CASE("solutions re-analyze to their pattern for small degrees") {
    auto f = Field::q();
    for (auto* s : {"1+1=2=2", "2+1=2+1=3", "3=3=1+1+1", "2+2=4=2+1+1"}) {
        auto pat = BranchingPattern::parse(s);
        for (auto& sol : solve_covering(pat, f)) CHECK(analyze_covering(sol).pattern == pat);
    }
}

TEST_CASE("composite 2x2 covering decomposes") {
    auto f = Field::q();
    // 16x(x-1)/(2x-1)^4 is the degree-4 composition row; candidates: the quadratic
    RatFunc quad = RF(f, {0, 4, -4}, {1});
    RatFunc quart(Poly::from_rats(f, {Rat(0), Rat(-16), Rat(16)}),
                  Poly::from_rats(f, {Rat(1), Rat(-8), Rat(24), Rat(-32), Rat(16)}));
    auto chains = decompose_covering(quart, {quad});
    REQUIRE(!chains.empty());
    CHECK(chains[0].outer_index == 0);
    CHECK(chains[0].inner_index == 0);
    CHECK(chains[0].inner.map_degree() == 2);

    // a prime-degree covering has no nontrivial chain
    auto none = decompose_covering(RF(f, {0, 0, 0, 1}, {1, -3, 3}), {quad});
    CHECK(none.empty());
}

TEST_CASE("solve_inner reconstructs a known factor") {
    auto f = Field::q();
    RatFunc quad = RF(f, {0, 4, -4}, {1});
    RatFunc inner = RF(f, {0, 2, 5}, {1, 7});
    RatFunc total = quad.compose(inner);
    auto hs = solve_inner(quad, total);
    bool hit = false;
    for (auto& h : hs) hit = hit || (h == inner);
    CHECK(hit);
}
