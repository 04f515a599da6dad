#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpg/ramify.hpp"

using namespace hpg;

namespace {
RatFunc RF(const FieldPtr& f, std::vector<long> num, std::vector<long> den) {
    std::vector<Rat> n(num.begin(), num.end()), d(den.begin(), den.end());
    return RatFunc(Poly::from_rats(f, n), Poly::from_rats(f, d));
}
}  // namespace

TEST_CASE("pattern notation round trip") {
    auto p = BranchingPattern::parse("2+2=3+1=3+1");
    CHECK(p.degree == 4);
    CHECK(p.fibers[0] == std::vector<int>{2, 2});
    CHECK(p.fibers[1] == std::vector<int>{3, 1});
    CHECK(p.str() == "2+2=3+1=3+1");
    CHECK(BranchingPattern::parse(p.str()) == p);
    CHECK_THROWS_AS(BranchingPattern::parse("2+2=3=4"), Error);
    CHECK_THROWS_AS(BranchingPattern::parse("2+2=4"), Error);
}

TEST_CASE("parametric patterns instantiate") {
    auto pp = ParamPattern::parse("3n*2=2n*3=(n-1)*6+3+2+1");
    auto p1 = pp.instantiate(1);
    CHECK(p1.degree == 6);
    CHECK(p1.str() == "2+2+2=3+3=3+2+1");
    auto p2 = pp.instantiate(2);
    CHECK(p2.degree == 12);
    CHECK(p2.fibers[2] == std::vector<int>{6, 3, 2, 1});
    // round trip through the printer
    CHECK(ParamPattern::parse(pp.str()).instantiate(3).str() == pp.instantiate(3).str());
}

TEST_CASE("analyze 4x(1-x)") {
    auto f = Field::q();
    RatFunc quad = RF(f, {0, 4, -4}, {1});
    auto rep = analyze_covering(quad);
    CHECK(rep.pattern.str() == "1+1=2=2");
    CHECK(rep.outside.empty());
    CHECK(rep.hurwitz_defect == 0);
}

TEST_CASE("analyze identity and constants") {
    auto f = Field::q();
    auto rep = analyze_covering(RatFunc::x(f));
    CHECK(rep.pattern.str() == "1=1=1");
    CHECK(rep.pattern.degree == 1);
    CHECK_THROWS_AS(analyze_covering(RatFunc::constant(f, FE::of(f, 3))), Error);
}

TEST_CASE("analyze the cubic over Q(w)") {
    // 3(2w+1) x(x-1)/(x+w)^3 has pattern 1+1+1=3=3 positionally
    auto fw = Field::of(NumberField::make("w", {Rat(1), Rat(1), Rat(1)}));
    FE w = FE::generator(fw);
    FE c = (2 * w + 1) * 3;
    Poly num = Poly(fw, {FE::of(fw, 0), c}) * Poly(fw, {FE::of(fw, -1), FE::of(fw, 1)});
    Poly den = Poly(fw, {w, FE::of(fw, 1)}).pow(3);
    auto rep = analyze_covering(RatFunc(num, den));
    CHECK(rep.pattern.degree == 3);
    CHECK(rep.pattern.fibers[0] == std::vector<int>{1, 1, 1});
    CHECK(rep.pattern.fibers[1] == std::vector<int>{3});
    CHECK(rep.pattern.fibers[2] == std::vector<int>{3});
    CHECK(rep.hurwitz_defect == 0);
}

TEST_CASE("outside critical points are reported") {
    // x^3 branches over 0 and infinity only; x^3 - 3x has critical points
    // x = +-1 over values -+2, away from the marked set.
    auto f = Field::q();
    auto rep = analyze_covering(RF(f, {0, -3, 0, 1}, {1}));
    CHECK(rep.hurwitz_defect > 0);
    CHECK(!rep.outside.empty());
}

TEST_CASE("composition degrees multiply in analysis") {
    auto f = Field::q();
    RatFunc quad = RF(f, {0, 4, -4}, {1});
    RatFunc c = compose(quad, quad);
    auto rep = analyze_covering(c);
    CHECK(rep.pattern.degree == 4);
    // 4u(1-u) twice: pattern 1+1+2=2+2=4 positionally
    CHECK(rep.pattern.fibers[0] == std::vector<int>{2, 1, 1});
    CHECK(rep.pattern.fibers[1] == std::vector<int>{2, 2});
    CHECK(rep.pattern.fibers[2] == std::vector<int>{4});
}

TEST_CASE("transform exponents") {
    auto pat = BranchingPattern::parse("2+1=3=2+1");
    ExponentTriple below = {AffineForm(Rat(1, 2)), AffineForm(Rat(1, 3)),
                            AffineForm(Rat(0), Rat(1))};
    auto values = transform_exponents(pat, below);
    REQUIRE(values.size() == 5);
    auto sing = singular_values(pat, below);
    REQUIRE(sing.size() == 3);
    CHECK(sing[0] == AffineForm(Rat(1, 2)));
    CHECK(sing[1] == AffineForm(Rat(0), Rat(1)));
    CHECK(sing[2] == AffineForm(Rat(0), Rat(2)));

    // degree-1 identity pattern keeps the triple
    auto idp = BranchingPattern::parse("1=1=1");
    auto tv = transform_exponents(idp, below);
    CHECK(tv[0] == below[0]);
    CHECK(tv[1] == below[1]);
    CHECK(tv[2] == below[2]);
}

TEST_CASE("table-2 instantiation keeps the self-triple") {
    auto pp = ParamPattern::parse("2n*2=n*4=(n-1)*4+2+1+1");
    ExponentTriple below = {AffineForm(Rat(1, 2)), AffineForm(Rat(1, 4)), AffineForm(Rat(1, 4))};
    auto pat = pp.instantiate(1);
    CHECK(pat.str() == "2+2=4=2+1+1");
    auto sing = singular_values(pat, below);
    REQUIRE(sing.size() == 3);
    CHECK(sing[0] == AffineForm(Rat(1, 4)));
    CHECK(sing[1] == AffineForm(Rat(1, 4)));
    CHECK(sing[2] == AffineForm(Rat(1, 2)));
}

TEST_CASE("degree formula") {
    ExponentTriple below = {AffineForm(Rat(1, 2)), AffineForm(Rat(1, 3)),
                            AffineForm(Rat(0), Rat(1))};
    ExponentTriple above = {AffineForm(Rat(1, 2)), AffineForm(Rat(0), Rat(1)),
                            AffineForm(Rat(0), Rat(2))};
    CHECK(degree_formula_holds(below, above, 3));
    CHECK(!degree_formula_holds(below, above, 4));

    ExponentTriple b2 = {AffineForm(Rat(1, 2)), AffineForm(Rat(1, 3)), AffineForm(Rat(1, 7))};
    ExponentTriple a2 = {AffineForm(Rat(1, 3)), AffineForm(Rat(1, 3)), AffineForm(Rat(1, 7))};
    CHECK(degree_formula_holds(b2, a2, 8));

    // elliptic case: both sides vanish identically, no degree restriction
    ExponentTriple b3 = {AffineForm(Rat(1, 2)), AffineForm(Rat(1, 3)), AffineForm(Rat(1, 6))};
    ExponentTriple a3 = {AffineForm(Rat(1, 3)), AffineForm(Rat(1, 3)), AffineForm(Rat(1, 3))};
    for (long d : {2, 5, 11}) CHECK(degree_formula_holds(b3, a3, d));
}

TEST_CASE("klein degrees") {
    auto kd = klein_degree(3, {AffineForm(Rat(1, 2)), AffineForm(Rat(2, 3)), AffineForm(Rat(2, 3))});
    CHECK(kd.value == Rat(5));
    CHECK(kd.integral);
    kd = klein_degree(3, {AffineForm(Rat(3, 2)), AffineForm(Rat(1, 3)), AffineForm(Rat(1, 3))});
    CHECK(kd.value == Rat(7));
    kd = klein_degree(5, {AffineForm(Rat(1, 2)), AffineForm(Rat(2, 3)), AffineForm(Rat(1, 5))});
    CHECK(kd.value == Rat(11));
    kd = klein_degree(3, {AffineForm(Rat(1, 2)), AffineForm(Rat(1, 3)), AffineForm(Rat(4, 3))});
    CHECK(kd.value == Rat(7));
    kd = klein_degree(5, {AffineForm(Rat(1, 5)), AffineForm(Rat(1, 5)), AffineForm(Rat(6, 5))});
    CHECK(kd.value == Rat(18));
}

TEST_CASE("affine form parsing") {
    CHECK(AffineForm::parse("1/2") == AffineForm(Rat(1, 2)));
    CHECK(AffineForm::parse("p") == AffineForm(Rat(0), Rat(1)));
    CHECK(AffineForm::parse("2p") == AffineForm(Rat(0), Rat(2)));
    CHECK(AffineForm::parse("2*p") == AffineForm(Rat(0), Rat(2)));
    CHECK(AffineForm::parse("1+p") == AffineForm(Rat(1), Rat(1)));
    CHECK(AffineForm::parse("p/3") == AffineForm(Rat(0), Rat(1, 3)));
    CHECK(AffineForm::parse("-p+1/2") == AffineForm(Rat(1, 2), Rat(-1)));
    CHECK(parse_triple("(1/2, 1/3, p)")[2] == AffineForm(Rat(0), Rat(1)));
}
