#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hpg/series.hpp"

using namespace hpg;

namespace {
FE Q(long n, long d = 1) { return FE::of(Field::q(), rat(n, d)); }

// Direct Pochhammer-product oracle for 2F1 coefficients.
Rat hpg_coeff_oracle(Rat a, Rat b, Rat c, int k) {
    Rat num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= (a + i) * (b + i);
        den *= (c + i) * (i + 1);
    }
    return num / den;
}
}  // namespace

TEST_CASE("hypergeometric series coefficients") {
    auto f = Field::q();
    Series s = hypergeometric_series({Q(1, 2), Q(1, 2), Q(1)}, 4);
    CHECK(s.coeff(0) == Q(1));
    CHECK(s.coeff(1) == Q(1, 4));
    CHECK(s.coeff(2) == Q(9, 64));
    CHECK(s.coeff(3) == Q(25, 256));
    for (int k = 0; k < 4; ++k)
        CHECK(s.coeff(k).to_rat() == hpg_coeff_oracle(Rat(1, 2), Rat(1, 2), Rat(1), k));

    // a = 0 gives the constant series
    Series one = hypergeometric_series({Q(0), Q(3, 7), Q(2)}, 6);
    for (int k = 1; k < 6; ++k) CHECK(one.coeff(k).is_zero());

    // 2F1(1+a,1;2;z) at a=0 is -log(1-z)/z = sum z^k/(k+1)
    Series lg = hypergeometric_series({Q(1), Q(1), Q(2)}, 4);
    CHECK(lg.coeff(0) == Q(1));
    CHECK(lg.coeff(1) == Q(1, 2));
    CHECK(lg.coeff(2) == Q(1, 3));
    CHECK(lg.coeff(3) == Q(1, 4));

    CHECK_THROWS_AS(hypergeometric_series({Q(1), Q(1), Q(0)}, 3), Error);
    CHECK_THROWS_AS(hypergeometric_series({Q(1), Q(1), Q(-2)}, 3), Error);
}

TEST_CASE("series arithmetic") {
    auto f = Field::q();
    Series one_plus = Series::from_poly(Poly::from_rats(f, {Rat(1), Rat(1)})).truncated(5);
    Series one_minus = Series::from_poly(Poly::from_rats(f, {Rat(1), Rat(-1)})).truncated(5);
    Series prod = one_plus * one_minus;
    CHECK(prod.coeff(0) == Q(1));
    CHECK(prod.coeff(1).is_zero());
    CHECK(prod.coeff(2) == Q(-1));

    Series geo = Series::constant(f, Q(1), 4) / one_minus.truncated(4);
    for (int k = 0; k < 4; ++k) CHECK(geo.coeff(k) == Q(1));

    // sqrt(x) * sqrt(x) = x on the ramified grid
    Series sx = Series(f, 2, 10, {Q(0), Q(1)});
    Series x2 = sx * sx;
    CHECK(x2.coeff(2) == Q(1));
    CHECK(x2.coeff(1).is_zero());
}

TEST_CASE("series composition") {
    auto f = Field::q();
    // outer 1/(1-u), inner 4x(1-x), order 3 -> 1 + 4x + 12x^2
    Series outer = Series::constant(f, Q(1), 3) /
                   Series::from_poly(Poly::from_rats(f, {Rat(1), Rat(-1)})).truncated(3);
    Series inner = Series::from_poly(Poly::from_rats(f, {Rat(0), Rat(4), Rat(-4)})).truncated(3);
    Series comp = outer.compose(inner);
    CHECK(comp.coeff(0) == Q(1));
    CHECK(comp.coeff(1) == Q(4));
    CHECK(comp.coeff(2) == Q(12));

    // compose with identity leaves the series unchanged
    Series idx = Series::x(f, 8);
    Series s = hypergeometric_series({Q(1, 3), Q(1, 5), Q(2)}, 8);
    CHECK(Series::first_mismatch(s.compose(idx), s, 8) == -1);

    // associativity of composition on random polynomial triples
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 8; ++t) {
        Series a = Series::from_poly(Poly::from_rats(f, {Rat(d(rng)), Rat(d(rng)), Rat(d(rng))}))
                       .truncated(9);
        Series b = Series::from_poly(Poly::from_rats(f, {Rat(0), Rat(d(rng)), Rat(d(rng))}))
                       .truncated(9);
        Series c = Series::from_poly(Poly::from_rats(f, {Rat(0), Rat(d(rng)), Rat(d(rng))}))
                       .truncated(9);
        if (b.valuation() < 1 || c.valuation() < 1) continue;
        Series lhs = a.compose(b).compose(c);
        Series rhs = a.compose(b.compose(c));
        CHECK(Series::first_mismatch(lhs, rhs, 8) == -1);
    }
}

TEST_CASE("series powers") {
    auto f = Field::q();
    Series base = Series::from_poly(Poly::from_rats(f, {Rat(1), Rat(-1)})).truncated(3);
    Series h = base.pow_unit(Q(1, 2));
    CHECK(h.coeff(0) == Q(1));
    CHECK(h.coeff(1) == Q(-1, 2));
    CHECK(h.coeff(2) == Q(-1, 8));

    Series s0 = base.pow_unit(Q(0));
    CHECK(s0.coeff(0) == Q(1));
    CHECK(s0.coeff(1).is_zero());

    // ((1-x)^{1/3})^3 = 1-x through order 10
    Series cube = Series::from_poly(Poly::from_rats(f, {Rat(1), Rat(-1)})).truncated(11);
    Series third = cube.pow_unit(Q(1, 3));
    Series re = third * third * third;
    CHECK(Series::first_mismatch(re, cube.truncated(11), 11) == -1);

    // exponent composition law on random units
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 6; ++t) {
        Series u = Series::from_poly(Poly::from_rats(f, {Rat(1), Rat(d(rng)), Rat(d(rng))}))
                       .truncated(9);
        FE e1 = FE::of(f, rat(d(rng), 5)), e2 = FE::of(f, rat(d(rng), 3));
        Series lhs = u.pow_unit(e1).pow_unit(e2);
        Series rhs = u.pow_unit(e1 * e2);
        CHECK(Series::first_mismatch(lhs, rhs, 9) == -1);
    }
}

TEST_CASE("radical expressions") {
    auto f = Field::q();
    // (1-x/2)^{-a} at a=1 -> geometric in x/2
    RadicalExpr r{FE::of(f, 1), {{Poly::from_rats(f, {Rat(1), Rat(-1, 2)}), Q(-1)}}};
    Series s = r.series(3);
    CHECK(s.coeff(0) == Q(1));
    CHECK(s.coeff(1) == Q(1, 2));
    CHECK(s.coeff(2) == Q(1, 4));

    Series empty = RadicalExpr::one(f).series(4);
    CHECK(empty.coeff(0) == Q(1));
    CHECK(empty.coeff(3).is_zero());

    RadicalExpr pm{FE::of(f, 1),
                   {{Poly::from_rats(f, {Rat(1), Rat(-1)}), Q(1, 2)},
                    {Poly::from_rats(f, {Rat(1), Rat(-1)}), Q(-1, 2)}}};
    Series unit = pm.series(6);
    CHECK(unit.coeff(0) == Q(1));
    for (int k = 1; k < 6; ++k) CHECK(unit.coeff(k).is_zero());

    // log derivative of (1-x)^e is -e/(1-x)
    RadicalExpr le{FE::of(f, 1), {{Poly::from_rats(f, {Rat(1), Rat(-1)}), Q(3, 7)}}};
    RatFunc ld = le.log_derivative();
    CHECK(ld == RatFunc(Poly::from_rats(f, {Rat(-3, 7)}), Poly::from_rats(f, {Rat(1), Rat(-1)})));
}

TEST_CASE("euler transformation as truncated series") {
    // (1-z)^{c-a-b} 2F1(c-a,c-b;c;z) = 2F1(a,b;c;z) to order 16
    auto f = Field::q();
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> num(-7, 7);
    int done = 0;
    while (done < 5) {
        Rat a = rat(num(rng), 4), b = rat(num(rng), 3), c = rat(2 * num(rng) + 1, 6);
        if (is_integer(c) && c <= 0) continue;
        Series lhs = hypergeometric_series({Q(a.get_num().get_si()) * 0 + FE::of(f, a), FE::of(f, b), FE::of(f, c)}, 16);
        Series rhs = Series::from_poly(Poly::from_rats(f, {Rat(1), Rat(-1)}))
                         .truncated(16)
                         .pow_unit(FE::of(f, c - a - b)) *
                     hypergeometric_series({FE::of(f, c - a), FE::of(f, c - b), FE::of(f, c)}, 16);
        CHECK(Series::first_mismatch(lhs, rhs, 16) == -1);
        ++done;
    }
}

TEST_CASE("terminating appell sums") {
    auto f = Field::q();
    // m=n=0 collapses to the single constant term
    FE one = appell_f2<FE>(Q(5, 7), 0, 0, Q(1), Q(1), Q(9), Q(-3));
    CHECK(one == Q(1));

    // F2 with m=n=0 reproduces the even dihedral closed form at order 6:
    //   2F1(a/2,(a+1)/2;1/2;z) = ((1-sqrt z)^{-a} + (1+sqrt z)^{-a})/2
    auto fa = Field::with_param(NumberField::rationals(), "a");
    FE a = FE::parameter(fa);
    int w_order = 13;  // order 6 in z on the sqrt grid
    Series z = Series(fa, 2, w_order, {FE::of(fa, 0), FE::of(fa, 0), FE::of(fa, 1)});
    Series lhs = hypergeometric_series({a / 2, (a + 1) / 2, FE::of(fa, Rat(1, 2))}, 7).compose(z);
    // 1 -/+ w directly on the sqrt grid (w = sqrt z)
    Series wm(fa, 2, w_order, {FE::of(fa, 1), FE::of(fa, -1)});
    Series wp(fa, 2, w_order, {FE::of(fa, 1), FE::of(fa, 1)});
    Series rhs = (wm.pow_unit(-a) + wp.pow_unit(-a)) * FE::of(fa, Rat(1, 2));
    // lhs is on the z-halfint grid: its sqrt-x coefficients vanish
    CHECK(Series::first_mismatch(lhs, rhs, w_order) == -1);
}

TEST_CASE("hypergeometric series satisfies its differential equation termwise") {
    auto f = Field::q();
    Rat a(1, 2), b(-2, 3), c(5, 4);
    int n = 14;
    Series y = hypergeometric_series({FE::of(f, a), FE::of(f, b), FE::of(f, c)}, n);
    // z(1-z) y'' + (c - (a+b+1) z) y' - a b y  has no terms below the cutoff
    auto deriv = [&](const Series& s) {
        std::vector<FE> out;
        for (int k = 1; k < s.trunc() && k < n; ++k) out.push_back(s.coeff(k) * (long)k);
        return Series(f, 1, s.trunc() - 1, std::move(out));
    };
    Series y1 = deriv(y), y2 = deriv(y1);
    Series z = Series::x(f, n);
    Series lhs = z * (Series::constant(f, Q(1), n) - z) * y2 +
                 (Series::constant(f, FE::of(f, c), n) - z * FE::of(f, Rat(a + b + 1))) * y1 -
                 y * FE::of(f, Rat(a * b));
    for (int k = 0; k < lhs.trunc() && k < n - 2; ++k) CHECK(lhs.coeff(k).is_zero());
}
