#include "hpg/twoterm.hpp"

#include <algorithm>

namespace hpg {

int two_term_mismatch(const TwoTermIdentity& id, int order) {
    const FieldPtr& f = id.tilde.a.field();
    int n = order + 1;
    Series lhs = hypergeometric_series(id.tilde, n);
    Series inner = Series::from_ratfunc(id.phi, n);
    if (inner.valuation() < 1)
        fail(ErrorKind::InvalidArgument, "covering does not map 0 to 0");
    Series rhs = id.theta.series(n) * hypergeometric_series(id.params, n).compose(inner);
    (void)f;
    return Series::first_mismatch(lhs, rhs, n);
}

CompanionCheck companion_mismatch(const TwoTermIdentity& id, int order) {
    const FieldPtr& f = id.tilde.a.field();
    FE one = FE::of(f, 1), two = FE::of(f, 2);
    FE c = id.params.c, ct = id.tilde.c;
    auto degenerate = [&](const FE& v) {
        // 2 - v must avoid non-positive integers, i.e. v must avoid 2,3,4...
        if (!v.is_rational()) return false;
        Rat r = v.to_rat();
        return is_integer(r) && r >= 2;
    };
    if (degenerate(c) || degenerate(ct) || (one - ct).is_zero() || (one - c).is_zero())
        return {false, -1};
    int n = order + 1;
    TwoTermIdentity comp;
    comp.tilde = {one + id.tilde.a - ct, one + id.tilde.b - ct, two - ct};
    comp.params = {one + id.params.a - c, one + id.params.b - c, two - c};
    comp.phi = id.phi;
    comp.theta = id.theta;  // replaced below by theta * (phi/(lead x^m))^{1-c}
    Series lhs = hypergeometric_series(comp.tilde, n);
    int m = 0;  // order of phi at 0 = valuation of the numerator
    while (id.phi.num().coeff(m).is_zero()) ++m;
    Series inner = Series::from_ratfunc(id.phi, n + m).truncated(n + m);
    FE lead = inner.coeff(m);
    // psi = phi / (lead x^m) is a unit with value 1; K = lead^{1-c}
    std::vector<FE> shifted;
    for (int k = m; k < n + m; ++k) shifted.push_back(inner.coeff(k));
    Series psi = Series(f, 1, n, shifted) * lead.inv();
    inner = inner.truncated(n);
    Series theta2 = id.theta.series(n) * psi.pow_unit(one - c);
    Series rhs = theta2 * hypergeometric_series(comp.params, n).compose(inner);
    return {true, Series::first_mismatch(lhs, rhs, n)};
}

namespace {

// smaller of two field elements that differ by a rational
FE rational_min(const FE& a, const FE& b) {
    FE d = b - a;
    if (d.is_rational()) return d.to_rat() >= 0 ? a : b;
    fail(ErrorKind::InvalidArgument, "cannot order exponents with non-rational difference");
}

}  // namespace

std::optional<TwoTermIdentity> derive_two_term(const RatFunc& phi, const HpgParams& below,
                                               int check_order) {
    const FieldPtr& f = phi.field();
    FE zero = FE::of(f, 0), one = FE::of(f, 1);
    // below exponents at 0, 1, infinity
    FE e0 = one - below.c;
    FE e1 = below.c - below.a - below.b;
    std::array<std::pair<FE, FE>, 3> target_exps = {
        std::make_pair(zero, e0), std::make_pair(zero, e1), std::make_pair(below.a, below.b)};

    int d = phi.map_degree();
    struct Place {
        Poly factor;  // x, x-1 or an unmarked factor; infinity has factor 0
        int target;   // fiber index
        int mult;
        bool at_infinity;
    };
    std::vector<Place> places;
    auto scan = [&](const Poly& p, int fiber) {
        if (!p.is_zero() && p.degree() > 0)
            for (auto& [fac, m] : squarefree_decompose(p)) {
                // split off the marked roots 0 and 1 individually
                Poly rest = fac;
                for (FE root : {zero, one}) {
                    Poly lin(f, {-root, one});
                    auto [q, r] = divmod(rest, lin);
                    if (r.is_zero()) {
                        places.push_back({lin, fiber, m, false});
                        rest = q;
                    }
                }
                if (rest.degree() > 0) places.push_back({rest, fiber, m, false});
            }
        int at_inf = d - (p.is_zero() ? 0 : p.degree());
        if (at_inf > 0) places.push_back({Poly::zero(f), fiber, at_inf, true});
    };
    scan(phi.num(), 0);
    scan(phi.num() - phi.den(), 1);
    scan(phi.den(), 2);

    // the exponent at x=1 may be shifted to zero two ways when neither
    // pulled exponent vanishes; try both
    for (int choice = 0; choice < 2; ++choice) {
        RadicalExpr theta = RadicalExpr::one(f);
        std::optional<std::pair<FE, FE>> exps0, exps1, expsi;
        FE tinf_accum = zero;  // total drop of theta at infinity
        bool viable = true;
        bool needs_second_pass = false;
        for (auto& pl : places) {
            auto [p, q] = target_exps[pl.target];
            FE lo = rational_min(p, q), hi = p + q - lo;
            FE a1 = lo * (long)pl.mult, a2 = hi * (long)pl.mult;
            bool marked0 = !pl.at_infinity && pl.factor.degree() == 1 && pl.factor.coeff(0).is_zero();
            bool marked1 = !pl.at_infinity && pl.factor.degree() == 1 &&
                           pl.factor.coeff(0) == -one && pl.factor.coeff(1) == one;
            if (marked0) {
                // theta keeps the value 1 at 0, so one exponent must vanish
                if (!a1.is_zero() && !a2.is_zero()) {
                    viable = false;
                    break;
                }
                exps0 = {a1, a2};
            } else if (marked1) {
                if (a1.is_zero() || a2.is_zero()) {
                    exps1 = {a1, a2};
                } else {
                    needs_second_pass = true;
                    FE t = choice == 0 ? -a1 : -a2;
                    theta.factors.push_back({Poly(f, {one, -one}), t});  // (1-x)^t
                    tinf_accum = tinf_accum + t;
                    exps1 = {a1 + t, a2 + t};
                }
            } else if (pl.at_infinity) {
                expsi = {a1, a2};  // theta contribution added at the end
            } else {
                // unmarked: must become exponents {0,1}
                FE t = -a1;
                if (!(a2 + t == one)) {
                    viable = false;  // genuinely singular point off the marks
                    break;
                }
                if (!t.is_zero()) {
                    FE c0 = pl.factor.constant_term();
                    if (c0.is_zero()) {
                        viable = false;
                        break;
                    }
                    theta.factors.push_back({pl.factor * c0.inv(), t});
                    tinf_accum = tinf_accum + t * (long)pl.factor.degree();
                }
            }
        }
        if (!viable || !exps0 || !exps1 || !expsi) {
            if (!needs_second_pass) return std::nullopt;
            continue;
        }
        // theta behaves like x^{tinf_accum} at infinity, shifting exponents by
        // -tinf_accum there
        FE i1 = expsi->first - tinf_accum, i2 = expsi->second - tinf_accum;
        TwoTermIdentity id;
        id.phi = phi;
        id.params = below;
        id.theta = theta;
        // one exponent at each of 0 and 1 is zero: the sums pick the other one
        FE ct = one - (exps0->first + exps0->second);
        FE d1 = exps1->first + exps1->second;
        FE A = i1, B = i2;
        if (!(ct - A - B == d1) && !(ct - A - B == -d1)) {
            if (!needs_second_pass) return std::nullopt;
            continue;
        }
        id.tilde = {A, B, ct};
        if (two_term_mismatch(id, check_order) == -1) return id;
        if (!needs_second_pass) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace hpg
