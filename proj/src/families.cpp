#include "hpg/families.hpp"

#include <algorithm>
#include <numeric>

namespace hpg {

Poly terminating_2f1(const FE& a, const FE& b, const FE& c, int nterms, const FieldPtr& f) {
    std::vector<FE> coeffs;
    FE cur = FE::of(f, 1);
    coeffs.push_back(cur);
    for (int j = 0; j < nterms; ++j) {
        FE den = (c + j) * FE::of(f, j + 1);
        if (den.is_zero())
            fail(ErrorKind::InvalidArgument, "terminating series hit a forbidden lower parameter");
        cur = cur * (a + j) * (b + j) / den;
        coeffs.push_back(cur);
    }
    return Poly(f, coeffs);
}

CyclicCovering cyclic_covering(int d, const FieldPtr& f) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "cyclic covering needs d >= 1");
    Poly one_minus_x = Poly::from_rats(f, {Rat(1), Rat(-1)});
    Poly p = Poly::constant(f, 1) - one_minus_x.pow(d);
    // p is divisible by x; the tail is (1-(1-x)^d)/x
    std::vector<FE> shifted(p.coeffs().begin() + 1, p.coeffs().end());
    Poly tail(f, shifted);
    return {tail, RatFunc(Poly::x(f) * tail)};
}

PadeCovering pade_covering(int k, int l, int m, int n) {
    if (k < 1 || l < 1 || m < 0 || n < 0) fail(ErrorKind::InvalidArgument, "bad Pade parameters");
    Rat a(l, k);
    a.canonicalize();
    if (is_integer(a) && !(a > m))
        fail(ErrorKind::InvalidArgument, "logarithmic case rejected: integral l/k requires l/k > m");
    auto f = Field::q();
    Poly first = terminating_2f1(FE::of(f, -n), FE::of(f, a - m), FE::of(f, -m - n), n, f);
    Poly second = terminating_2f1(FE::of(f, -m), FE::of(f, -a - n), FE::of(f, -m - n), m, f);
    Poly one_minus_x = Poly::from_rats(f, {Rat(1), Rat(-1)});
    Poly lhs = one_minus_x.pow(l) * first.pow(k);
    Poly rhs = second.pow(k);
    RatFunc covering(rhs - lhs, rhs);  // z = 1 - (1-x)^l first^k / second^k
    int degree = std::max(n * k + l, m * k);
    if (covering.map_degree() != degree)
        fail(ErrorKind::InvalidArgument, "internal: Pade covering degree mismatch");
    return {first, second, covering, degree};
}

DihedralThetas dihedral_thetas(int d, const FieldPtr& f) {
    if (d < 1) fail(ErrorKind::InvalidArgument, "dihedral thetas need d >= 1");
    // split (1+u)^d into even and odd u-parts, u^2 = x
    std::vector<FE> t1, t2;
    FE binom = FE::of(f, 1);
    std::vector<FE> row;
    for (int j = 0; j <= d; ++j) {
        row.push_back(binom);
        binom = binom * (long)(d - j) / (long)(j + 1);
    }
    for (int j = 0; j <= d; j += 2) t1.push_back(row[j]);
    for (int j = 1; j <= d; j += 2) t2.push_back(row[j]);
    Poly theta1(f, t1), theta2(f, t2);
    RatFunc covering(Poly::x(f) * theta2 * theta2, theta1 * theta1);
    return {theta1, theta2, covering};
}

GfdihCovering gfdih_covering(int k, int l, int m, int n) {
    if (k < 2 || l < 1 || m < 0 || n < 0)
        fail(ErrorKind::InvalidArgument, "dihedral Klein covering needs k >= 2, l >= 1");
    if (std::gcd(k, l) != 1)
        fail(ErrorKind::InvalidArgument, "hypothesis violation: gcd(k,l) must be 1");
    auto f = Field::q();
    FE c = FE::of(f, Rat(k + l, k));  // 1 + l/k
    Poly one_plus_u = Poly::from_rats(f, {Rat(1), Rat(1)});
    Poly G = Poly::zero(f);
    // G = x^{m/2} F3(m+1,n+1;-m,-n;1+l/k; (u+1)/(2u), (1+u)/2) as a
    // polynomial in u = sqrt x
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) {
            FE t = FE::of(f, 1);
            for (int q = 0; q < i; ++q) t *= FE::of(f, m + 1 + q) * FE::of(f, -m + q);
            for (int q = 0; q < j; ++q) t *= FE::of(f, n + 1 + q) * FE::of(f, -n + q);
            FE den = FE::of(f, 1);
            for (int q = 0; q < i + j; ++q) den *= c + q;
            for (int q = 2; q <= i; ++q) den = den * (long)q;
            for (int q = 2; q <= j; ++q) den = den * (long)q;
            if (den.is_zero())
                fail(ErrorKind::InvalidArgument, "forbidden lower parameter in the G sum");
            FE coef = t / (den * FE::of(f, 2).pow(i + j));
            Poly term = one_plus_u.pow(i + j);
            std::vector<FE> padded((size_t)(m - i), FE::of(f, 0));
            for (auto& cc : term.coeffs()) padded.push_back(cc * coef);
            G = G + Poly(f, padded);
        }
    Poly W = one_plus_u.pow(l) * G.pow(k);
    // W(u) = Theta1(u^2) + u^{2m+1} Theta2(u^2)
    std::vector<FE> t1, t2;
    for (int j = 0; j <= W.degree(); ++j) {
        FE cj = W[j];
        if (j % 2 == 0) {
            size_t xdeg = (size_t)(j / 2);
            while (t1.size() <= xdeg) t1.push_back(FE::of(f, 0));
            t1[xdeg] = cj;
        } else if (j < 2 * m + 1) {
            if (!cj.is_zero())
                fail(ErrorKind::InvalidArgument, "hypothesis violation: odd part below x^{m+1/2}");
        } else {
            size_t xdeg = (size_t)((j - (2 * m + 1)) / 2);
            while (t2.size() <= xdeg) t2.push_back(FE::of(f, 0));
            t2[xdeg] = cj;
        }
    }
    Poly theta1(f, t1), theta2(f, t2);
    std::vector<FE> mono((size_t)(2 * m + 1), FE::of(f, 0));
    mono.push_back(FE::of(f, 1));
    RatFunc covering(Poly(f, mono) * theta2 * theta2, theta1 * theta1);
    int degree = (m + n) * k + l;
    if (covering.map_degree() != degree)
        fail(ErrorKind::InvalidArgument, "internal: dihedral Klein covering degree mismatch");
    return {G, theta1, theta2, covering, degree};
}

FE gfdih_f2_route_constant(int k, int l, int m, int n) {
    // (1+u)^{m+n} F2(-l/k-m-n; -m,-n; -2m,-2n; 2u/(1+u), 2/(1+u)) is a
    // polynomial in u proportional to G; the constant is instance-specific.
    auto f = Field::q();
    RatFunc u = RatFunc::x(f);
    RatFunc one = RatFunc::constant(f, FE::of(f, 1));
    RatFunc arg1 = (u * RatFunc::constant(f, FE::of(f, 2))) / (one + u);
    RatFunc arg2 = RatFunc::constant(f, FE::of(f, 2)) / (one + u);
    FE a = FE::of(f, -Rat(l, k) - m - n);
    RatFunc f2 = appell_f2<RatFunc>(a, m, n, FE::of(f, -2 * m), FE::of(f, -2 * n), arg1, arg2);
    Poly one_plus_u = Poly::from_rats(f, {Rat(1), Rat(1)});
    RatFunc g_alt = RatFunc(one_plus_u.pow(m + n)) * f2;
    if (g_alt.den().degree() != 0)
        fail(ErrorKind::InvalidArgument, "F2 route did not produce a polynomial");
    auto direct = gfdih_covering(k, l, m, n);
    Poly G2 = g_alt.num() * g_alt.den().lc().inv();
    const Poly& G = direct.g_of_sqrt;
    if (G.degree() != G2.degree()) fail(ErrorKind::InvalidArgument, "F2 route degree mismatch");
    FE ratio = G2.lc() / G.lc();
    if (!(G * ratio == G2)) fail(ErrorKind::InvalidArgument, "F2 route is not proportional");
    return ratio;
}

// ------------------------------------------------------------------ elliptic

BivarPoly BivarPoly::from_x(const Poly& p) { return {p.field(), {p}}; }

BivarPoly BivarPoly::y_times(const Poly& p, int ypow, const FieldPtr& f) {
    BivarPoly out{f, std::vector<Poly>((size_t)ypow + 1, Poly::zero(f))};
    out.y_coeffs[ypow] = p;
    return out;
}

bool BivarPoly::is_zero() const {
    for (auto& c : y_coeffs)
        if (!c.is_zero()) return false;
    return true;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    BivarPoly out{field, {}};
    size_t n = std::max(y_coeffs.size(), o.y_coeffs.size());
    for (size_t i = 0; i < n; ++i) {
        Poly c = Poly::zero(field);
        if (i < y_coeffs.size()) c = c + y_coeffs[i];
        if (i < o.y_coeffs.size()) c = c + o.y_coeffs[i];
        out.y_coeffs.push_back(c);
    }
    return out;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const {
    BivarPoly neg = o;
    for (auto& c : neg.y_coeffs) c = -c;
    return *this + neg;
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    BivarPoly out{field,
                  std::vector<Poly>(y_coeffs.size() + o.y_coeffs.size() - 1, Poly::zero(field))};
    for (size_t i = 0; i < y_coeffs.size(); ++i)
        for (size_t j = 0; j < o.y_coeffs.size(); ++j)
            out.y_coeffs[i + j] = out.y_coeffs[i + j] + y_coeffs[i] * o.y_coeffs[j];
    return out;
}

namespace {

// y^r = rhs(x)
std::pair<int, Poly> curve_relation(CurveTag c, const FieldPtr& f) {
    switch (c) {
        case CurveTag::E1: return {2, Poly::from_rats(f, {Rat(0), Rat(-1), Rat(0), Rat(1)})};
        case CurveTag::E2: return {2, Poly::from_rats(f, {Rat(-1), Rat(0), Rat(0), Rat(1)})};
        case CurveTag::E3: return {3, Poly::from_rats(f, {Rat(1), Rat(0), Rat(0), Rat(-1)})};
    }
    fail(ErrorKind::InvalidArgument, "unknown curve");
}

}  // namespace

BivarPoly reduce_mod_curve(const BivarPoly& p, CurveTag curve) {
    auto [r, rhs] = curve_relation(curve, p.field);
    BivarPoly out = p;
    while ((int)out.y_coeffs.size() > r) {
        size_t top = out.y_coeffs.size() - 1;
        Poly c = out.y_coeffs[top];
        out.y_coeffs.pop_back();
        if (c.is_zero()) continue;
        out.y_coeffs[top - r] = out.y_coeffs[top - r] + c * rhs;
    }
    while (!out.y_coeffs.empty() && out.y_coeffs.back().is_zero()) out.y_coeffs.pop_back();
    if (out.y_coeffs.empty()) out.y_coeffs.push_back(Poly::zero(p.field));
    return out;
}

bool verify_curve_morphism(CurveTag source, CurveTag target, const BivarRat& X, const BivarRat& Y) {
    const FieldPtr& f = X.num.field;
    auto mul = [&](const BivarPoly& a, const BivarPoly& b) {
        return reduce_mod_curve(a * b, source);
    };
    BivarPoly xn = reduce_mod_curve(X.num, source), yn = reduce_mod_curve(Y.num, source);
    BivarPoly xd = BivarPoly::from_x(X.den), yd = BivarPoly::from_x(Y.den);
    BivarPoly xn3 = mul(mul(xn, xn), xn);
    BivarPoly xd3 = mul(mul(xd, xd), xd);
    BivarPoly acc{f, {Poly::zero(f)}};
    if (target == CurveTag::E3) {
        // X^3 + Y^3 - 1 = 0
        BivarPoly yn3 = mul(mul(yn, yn), yn);
        BivarPoly yd3 = mul(mul(yd, yd), yd);
        acc = mul(xn3, yd3) + mul(yn3, xd3) - mul(xd3, yd3);
    } else {
        // E1: Y^2 - X^3 + X = 0;  E2: Y^2 - X^3 + 1 = 0
        BivarPoly yn2 = mul(yn, yn);
        BivarPoly yd2 = mul(yd, yd);
        acc = mul(yn2, xd3) - mul(xn3, yd2);
        if (target == CurveTag::E1) {
            BivarPoly xd2 = mul(xd, xd);
            acc = acc + mul(mul(xn, xd2), yd2);
        } else {
            acc = acc + mul(xd3, yd2);
        }
    }
    acc = reduce_mod_curve(acc, source);
    return acc.is_zero();
}

RatFunc isogeny_covering(const IsogenyMap& iso) {
    const FieldPtr& f = iso.psi_x.field();
    if (iso.curve == CurveTag::E3)
        fail(ErrorKind::NotImplemented, "E3 self-coverings are handled through E2");
    int r = iso.curve == CurveTag::E1 ? 2 : 3;
    RatFunc inv(iso.psi_x.den(), iso.psi_x.num());
    RatFunc p = inv;
    for (int i = 1; i < r; ++i) p = p * inv;
    Poly num = p.num(), den = p.den();
    auto klass = [&](const Poly& q) {
        int k = -1;
        for (int i = 0; i <= q.degree(); ++i)
            if (!q[i].is_zero()) {
                if (k < 0)
                    k = i % r;
                else if (i % r != k)
                    fail(ErrorKind::InvalidArgument,
                         "parity violation: mixed exponent classes in the covering");
            }
        return k;
    };
    int kn = klass(num), kd = klass(den);
    if (kn != kd)
        fail(ErrorKind::InvalidArgument, "parity violation: numerator and denominator classes differ");
    if (kn != 0) {
        // strip the common power x^kn
        auto strip = [&](const Poly& q) {
            std::vector<FE> c(q.coeffs().begin() + kn, q.coeffs().end());
            return Poly(f, c);
        };
        num = strip(num);
        den = strip(den);
    }
    auto compress = [&](const Poly& q) {
        std::vector<FE> c;
        for (int i = 0; i <= q.degree(); i += r) c.push_back(q[i]);
        return Poly(f, c);
    };
    Poly sn = compress(num), sd = compress(den);
    int D = std::max(sn.degree(), sd.degree());
    RatFunc out(sn.reversed(D), sd.reversed(D));  // substitute the reciprocal argument
    if (out.map_degree() != iso.norm)
        fail(ErrorKind::InvalidArgument, "isogeny covering degree differs from the norm");
    return out;
}

bool pqr_verify(const PqrTriple& t) {
    const FieldPtr& f = t.P.field();
    Poly z = Poly::x(f);
    Poly lhs = t.R * t.R;
    Poly rhs = (z - Poly::constant(f, 1)) * t.Q.pow(3) - z * z * t.P.pow(6);
    return lhs == rhs;
}

std::pair<BivarRat, BivarRat> pqr_to_morphism(const PqrTriple& t) {
    const FieldPtr& f = t.P.field();
    int n = std::max(t.P.degree(), 0);
    if (t.Q.degree() > 2 * n || t.R.degree() > 3 * n + 1)
        fail(ErrorKind::InvalidArgument, "degree pattern violated");
    // p(x^{-3}) x^{3 deg} = reverse(p) at x^3; the powers of x in the printed
    // morphism cancel exactly against these prefactors
    auto sub_cubed = [&](const Poly& p, int target_deg) {
        Poly rev = p.reversed(target_deg);
        std::vector<FE> c;
        for (int i = 0; i <= rev.degree(); ++i) {
            c.push_back(rev[i]);
            if (i < rev.degree()) {
                c.push_back(FE::of(f, 0));
                c.push_back(FE::of(f, 0));
            }
        }
        return Poly(f, c);
    };
    Poly Pt = sub_cubed(t.P, n);
    Poly Qt = sub_cubed(t.Q, 2 * n);
    Poly Rt = sub_cubed(t.R, 3 * n + 1);
    BivarRat X{BivarPoly::y_times(Poly::x(f) * Qt, 1, f), Pt * Pt};
    BivarRat Y{BivarPoly::from_x(Rt), Pt.pow(3)};
    return {X, Y};
}

std::vector<FE> monomial_kth_roots(const FE& c, int k) {
    const FieldPtr& f = c.field();
    std::vector<FE> out;
    if (c.is_zero()) return {c};
    int deg = f->number_field()->degree();
    if (deg == 1) {
        if (c.is_rational())
            if (auto r = kth_root(c.to_rat(), (unsigned)k)) out.push_back(FE::of(f, *r));
        return out;
    }
    FE g = FE::generator(f);
    for (int s = 0; s < deg; ++s) {
        FE gs = g.pow(s * k);
        FE d = c / gs;
        if (!d.is_rational()) continue;
        if (auto r = kth_root(d.to_rat(), (unsigned)k)) {
            FE cand = FE::of(f, *r) * g.pow(s);
            if (cand.pow(k) == c &&
                std::find_if(out.begin(), out.end(), [&](const FE& x) { return x == cand; }) ==
                    out.end())
                out.push_back(cand);
            FE cand2 = -cand;
            if (k % 2 == 0 && cand2.pow(k) == c &&
                std::find_if(out.begin(), out.end(), [&](const FE& x) { return x == cand2; }) ==
                    out.end())
                out.push_back(cand2);
        }
    }
    return out;
}

std::optional<PqrTriple> solve_pqr_n0(const FieldPtr& f) {
    // Degree pattern (0, 0, 1): R = a z + b with a^2 = -P^6, 2ab = Q^3,
    // b^2 = -Q^3; normalize P = 1, then b = -2a and Q^3 = 4.
    std::vector<FE> is = monomial_kth_roots(FE::of(f, -1), 2);
    std::vector<FE> qs = monomial_kth_roots(FE::of(f, 4), 3);
    for (auto& a : is)
        for (auto& q : qs) {
            PqrTriple t{Poly::constant(f, 1), Poly::constant(f, q), Poly(f, {a * (-2), a})};
            if (pqr_verify(t)) return t;
        }
    return std::nullopt;
}

}  // namespace hpg
