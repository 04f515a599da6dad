#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpg/catalog.hpp"

using namespace hpg;

namespace {

const char* kMiniCatalog = R"(
# minimal inline catalog used by the unit tests
entry quadr1
class quadratic
degree 2
symbols a, b
samples a: 1/5, 3/7, -2/9 ; b: 1/3, 2/5, 5/7
below (1-a-b)/2 ; 1/2 ; (b-a)/2
above (1-a-b)/2 ; (1-a-b)/2 ; b-a
pattern 1+1=2=2
phi num 0, 4, -4
phi den 1
tilde a ; b ; (a+b+1)/2
params a/2 ; b/2 ; (a+b+1)/2
end

entry cubic3
class cubic
degree 3
field w [1, 1, 1]
symbols a
samples a: 1/5, 3/7, -2/9
below (1-2*a)/3 ; 1/3 ; 1/3
above (1-2*a)/3 ; (1-2*a)/3 ; (1-2*a)/3
pattern 1+1+1=3=3
# phi = 3(2w+1) x (x-1) / (x+w)^3
phi num 0, [-3,-6], [3,6]
phi den [0,0,0...placeholder]
tilde a ; (a+1)/3 ; (2*a+2)/3
params a/3 ; (a+1)/3 ; (2*a+2)/3
theta (1+(w+1)*x*(-1))^(-a)
end
)";

}  // namespace

TEST_CASE("catalog parsing basics") {
    // fix the placeholder before parsing: (x+w)^3 = w^3 + 3w^2 x + 3w x^2 + x^3
    // with w^2 = -1-w: w^3 = 1, 3w^2 = -3-3w
    std::string text = kMiniCatalog;
    std::string den = "phi den [1,0], [-3,-3], [0,3], [1,0]";
    auto pos = text.find("phi den [0,0,0...placeholder]");
    text.replace(pos, std::string("phi den [0,0,0...placeholder]").size(), den);

    auto entries = parse_catalog(text, "mini");
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].id == "quadr1");
    CHECK(entries[0].degree == 2);
    CHECK(entries[0].symbols == std::vector<std::string>{"a", "b"});
    CHECK(entries[1].nf->generator() == "w");
    CHECK(entries[1].phi->map_degree() == 3);
}

TEST_CASE("load errors carry locations") {
    CHECK_THROWS_AS(parse_catalog("entry x\nbogus directive\nend\n", "t"), Error);
    // declared degree inconsistent with the map
    const char* bad = R"(
entry b
class quadratic
degree 3
below 1;1;1
phi num 0, 4, -4
phi den 1
end
)";
    CHECK_THROWS_AS(parse_catalog(bad, "t"), Error);
    CHECK(parse_catalog("", "t").empty());
}

TEST_CASE("verify a parametric identity from catalog text") {
    std::string text = kMiniCatalog;
    std::string den = "phi den [1,0], [-3,-3], [0,3], [1,0]";
    auto pos = text.find("phi den [0,0,0...placeholder]");
    text.replace(pos, std::string("phi den [0,0,0...placeholder]").size(), den);
    auto entries = parse_catalog(text, "mini");

    auto cert0 = verify_identity(entries[0], 16);
    for (auto& c : cert0.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK((c.pass || c.skipped));
    }
    auto cert1 = verify_identity(entries[1], 16);
    for (auto& c : cert1.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK((c.pass || c.skipped));
    }
    auto ram0 = verify_ramification(entries[0]);
    for (auto& c : ram0.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK((c.pass || c.skipped));
    }
    auto ram1 = verify_ramification(entries[1]);
    for (auto& c : ram1.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK((c.pass || c.skipped));
    }
}

TEST_CASE("mismatch is detected and localized") {
    std::string text = kMiniCatalog;
    std::string den = "phi den [1,0], [-3,-3], [0,3], [1,0]";
    auto pos = text.find("phi den [0,0,0...placeholder]");
    text.replace(pos, std::string("phi den [0,0,0...placeholder]").size(), den);
    auto entries = parse_catalog(text, "mini");
    // perturb a numerator coefficient of the quadratic by +1
    auto f = entries[0].base_field();
    entries[0].phi = RatFunc(Poly::from_rats(f, {Rat(0), Rat(5), Rat(-4)}),
                             Poly::from_rats(f, {Rat(1)}));
    auto cert = verify_identity(entries[0], 12);
    bool failed = false;
    for (auto& c : cert.checks)
        if (!c.pass && !c.skipped) {
            failed = true;
            CHECK(c.detail.find("mismatch at index") != std::string::npos);
        }
    CHECK(failed);
}

TEST_CASE("two-term derivation matches a printed Klein identity") {
    // z = -x^2 (4x-5)^3 / (5x-4)^3 pulled from (1/4,-1/12;2/3) gives the
    // printed tilde (1/4,-5/12;1/3) and theta (1-5x/4)^{1/4}
    auto f = Field::q();
    Poly num = Poly::from_rats(f, {Rat(0), Rat(0), Rat(-1)}) *
               Poly::from_rats(f, {Rat(-5), Rat(4)}).pow(3);
    Poly den = Poly::from_rats(f, {Rat(-4), Rat(5)}).pow(3);
    RatFunc phi(num, den);
    HpgParams below{FE::of(f, Rat(1, 4)), FE::of(f, Rat(-1, 12)), FE::of(f, Rat(2, 3))};
    auto id = derive_two_term(phi, below);
    REQUIRE(id.has_value());
    CHECK(id->tilde.c == FE::of(f, Rat(1, 3)));
    CHECK(((id->tilde.a == FE::of(f, Rat(1, 4)) && id->tilde.b == FE::of(f, Rat(-5, 12))) ||
           (id->tilde.b == FE::of(f, Rat(1, 4)) && id->tilde.a == FE::of(f, Rat(-5, 12)))));
    REQUIRE(id->theta.factors.size() == 1);
    CHECK(id->theta.factors[0].first == Poly::from_rats(f, {Rat(1), Rat(-5, 4)}));
    CHECK(id->theta.factors[0].second == FE::of(f, Rat(1, 4)));
    CHECK(two_term_mismatch(*id, 24) == -1);
}

TEST_CASE("verify_all aggregates and orders deterministically") {
    std::string text = kMiniCatalog;
    std::string den = "phi den [1,0], [-3,-3], [0,3], [1,0]";
    auto pos = text.find("phi den [0,0,0...placeholder]");
    text.replace(pos, std::string("phi den [0,0,0...placeholder]").size(), den);
    auto entries = parse_catalog(text, "mini");
    VerifyOptions opt;
    opt.order = 12;
    opt.jobs = 2;
    auto sum = verify_all(entries, opt);
    CHECK(sum.checked == 2);
    CHECK(sum.failed == 0);
    CHECK(sum.certificates[0].id == "cubic3");
    CHECK(sum.certificates[1].id == "quadr1");
}
