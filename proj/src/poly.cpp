#include "hpg/poly.hpp"

#include <algorithm>
#include <sstream>

namespace hpg {

// ------------------------------------------------------------------------ Poly

Poly::Poly(FieldPtr f, std::vector<FE> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) {
    trim();
}

Poly Poly::from_rats(const FieldPtr& f, const std::vector<Rat>& coeffs) {
    std::vector<FE> c;
    c.reserve(coeffs.size());
    for (auto& r : coeffs) c.push_back(FE::of(f, r));
    return Poly(f, std::move(c));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FE Poly::coeff(int i) const {
    if (i < 0 || i >= (int)c_.size()) return FE::of(field_, 0);
    return c_[i];
}

const FE& Poly::lc() const {
    if (c_.empty()) fail(ErrorKind::InvalidArgument, "leading coefficient of zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<FE> c(std::max(a.c_.size(), b.c_.size()), FE::of(a.field_, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(a.field_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.field_);
    std::vector<FE> c(a.c_.size() + b.c_.size() - 1, FE::of(a.field_, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.field_, std::move(c));
}

Poly Poly::operator*(const FE& s) const {
    Poly out = *this;
    for (auto& x : out.c_) x *= s;
    out.trim();
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * lc().inv();
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly::zero(field_);
    std::vector<FE> c(c_.size() - 1, FE::of(field_, 0));
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * (long)i;
    return Poly(field_, std::move(c));
}

FE Poly::eval(const FE& x) const {
    FE acc = FE::of(field_, 0);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::compose(const Poly& inner) const {
    Poly acc = Poly::zero(field_);
    for (int i = degree(); i >= 0; --i)
        acc = acc * inner + Poly::constant(field_, c_[i]);
    return acc;
}

Poly Poly::shifted(const FE& s) const {
    return compose(Poly(field_, {s, FE::of(field_, 1)}));
}

Poly Poly::reversed(int target_deg) const {
    int n = target_deg < 0 ? degree() : target_deg;
    if (n < degree()) fail(ErrorKind::InvalidArgument, "reverse below actual degree");
    std::vector<FE> c(n + 1, FE::of(field_, 0));
    for (int i = 0; i <= degree(); ++i) c[n - i] = c_[i];
    return Poly(field_, std::move(c));
}

Poly Poly::pow(int e) const {
    Poly out = Poly::constant(field_, 1), base = *this;
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= degree(); ++i) {
        if (c_[i].is_zero()) continue;
        std::string cs = c_[i].str();
        // multi-term coefficients are parenthesized and always get a '+'
        bool plain = cs.find('+') == std::string::npos &&
                     cs.find('-', 1) == std::string::npos;
        if (!first && !(plain && cs[0] == '-')) os << "+";
        if (i == 0) {
            os << (plain ? cs : "(" + cs + ")");
        } else {
            if (cs == "1") {
            } else if (cs == "-1") {
                os << "-";
            } else if (plain) {
                os << cs << "*";
            } else {
                os << "(" << cs << ")*";
            }
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    const FieldPtr& f = a.field();
    std::vector<FE> rem(a.coeffs());
    int db = b.degree();
    FE lcinv = b.lc().inv();
    int da = (int)rem.size() - 1;
    if (da < db) return {Poly::zero(f), a};
    std::vector<FE> q(da - db + 1, FE::of(f, 0));
    for (; da >= db; --da) {
        if (rem[da].is_zero()) continue;
        FE t = rem[da] * lcinv;
        q[da - db] = t;
        for (int i = 0; i <= db; ++i) rem[da - db + i] -= t * b[i];
    }
    return {Poly(f, std::move(q)), Poly(f, std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    if (x.is_zero() && y.is_zero())
        fail(ErrorKind::InvalidArgument, "gcd of two zero polynomials");
    while (!y.is_zero()) {
        auto r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) fail(ErrorKind::InvalidArgument, "inexact polynomial division");
    return q;
}

std::vector<SquarefreeFactor> squarefree_decompose(const Poly& p) {
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "squarefree decomposition of zero");
    std::vector<SquarefreeFactor> out;
    if (p.degree() == 0) return out;
    // Yun's algorithm (characteristic zero).
    Poly a = p.monic();
    Poly d = a.derivative();
    Poly g = gcd(a, d);
    Poly w = exact_div(a, g);
    Poly y = exact_div(d, g);
    int i = 1;
    while (!(w.degree() == 0)) {
        Poly z = y - w.derivative();
        Poly f = gcd(w, z.is_zero() ? w : z);
        if (f.degree() > 0) out.push_back({f, i});
        w = exact_div(w, f);
        y = exact_div(z, f);
        ++i;
    }
    return out;
}

FE resultant(const Poly& a, const Poly& b) {
    const FieldPtr& f = a.field();
    int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return FE::of(f, 0);
    if (m == 0) return a.lc().pow(n);
    if (n == 0) return b.lc().pow(m);
    // Sylvester matrix, plain Gaussian elimination over the field with
    // determinant bookkeeping.
    int sz = m + n;
    std::vector<std::vector<FE>> M(sz, std::vector<FE>(sz, FE::of(f, 0)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[r][r + i] = a[m - i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[n + r][r + i] = b[n - i];
    FE det = FE::of(f, 1);
    for (int col = 0; col < sz; ++col) {
        int piv = -1;
        for (int r = col; r < sz; ++r)
            if (!M[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return FE::of(f, 0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        FE inv = M[col][col].inv();
        for (int r = col + 1; r < sz; ++r) {
            if (M[r][col].is_zero()) continue;
            FE t = M[r][col] * inv;
            for (int k = col; k < sz; ++k) M[r][k] -= t * M[col][k];
        }
    }
    return det;
}

std::vector<Rat> rational_roots(const Poly& p) {
    std::vector<Rat> out;
    if (p.is_zero()) fail(ErrorKind::InvalidArgument, "roots of zero polynomial");
    // Requires rational coefficients; other elements are handled by
    // field_roots. Work with cleared integer coefficients.
    std::vector<Rat> rc;
    for (auto& c : p.coeffs()) {
        if (!c.is_rational()) {
            if (p.degree() == 1) {
                FE r = -p[0] / p[1];
                if (r.is_rational()) out.push_back(r.to_rat());
            }
            return out;
        }
        rc.push_back(c.to_rat());
    }
    Int lcm = 1;
    for (auto& c : rc) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> z;
    for (auto& c : rc) z.push_back(Int(c * Rat(lcm)));
    int lo = 0;
    while (lo < (int)z.size() && z[lo] == 0) ++lo;
    if (lo > 0) out.push_back(Rat(0));
    if (lo >= (int)z.size()) return out;
    Int a0 = abs(z[lo]), ad = abs(z.back());
    auto divisors = [](const Int& n) {
        std::vector<Int> d;
        for (Int i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                d.push_back(i);
                if (i * i != n) d.push_back(n / i);
            }
        return d;
    };
    for (auto& pn : divisors(a0))
        for (auto& qn : divisors(ad))
            for (int s = -1; s <= 1; s += 2) {
                Rat cand(s * pn, qn);
                cand.canonicalize();
                Rat v = 0;
                for (int i = (int)z.size() - 1; i >= lo; --i) v = v * cand + Rat(z[i]);
                if (v == 0) {
                    if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
                }
            }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FE> field_roots(const Poly& p) {
    const FieldPtr& f = p.field();
    std::vector<FE> out;
    Poly q = p.monic();
    // Deflate linear factors found from rational roots first.
    for (auto& r : rational_roots(q)) {
        FE root = FE::of(f, r);
        Poly lin(f, {-root, FE::of(f, 1)});
        while (true) {
            auto [quo, rem] = divmod(q, lin);
            if (!rem.is_zero()) break;
            out.push_back(root);
            q = quo;
        }
    }
    // Linear leftover over the field.
    if (q.degree() == 1) {
        out.push_back(-q[0] / q[1]);
        q = Poly::constant(f, 1);
    }
    // Quadratic leftover: solve via the field when the discriminant is a
    // perfect square there (quadratic number fields).
    if (q.degree() == 2 && !f->has_param() && f->number_field()->degree() == 2) {
        FE a = q[2], b = q[1], c = q[0];
        FE disc = b * b - 4 * a * c;
        // try (u + v g)^2 = disc with g the generator
        const auto& nf = f->number_field();
        // brute force via resolving u,v rationally: disc = d0 + d1 g,
        // (u+vg)^2 = u^2 + v^2 g^2 + 2uv g ; g^2 = -m1 g - m0.
        auto dv = disc.constant_vec();
        Rat m0 = nf->min_poly()[0], m1 = nf->min_poly()[1];
        Rat d0 = dv[0], d1 = dv[1];
        // u^2 - m0 v^2 = d0 ; 2uv - m1 v^2 = d1
        // v = 0: u^2 = d0; else u = (d1 + m1 v^2)/(2v), substitute.
        std::vector<std::pair<Rat, Rat>> sols;
        if (d1 == 0) {
            if (auto u = kth_root(d0, 2)) sols.push_back({*u, Rat(0)});
        }
        // (d1 + m1 v^2)^2 - 4 m0 v^4 = 4 d0 v^2  -> quartic in v, even powers
        // substitute w = v^2: (m1^2 - 4 m0) w^2 + (2 d1 m1 - 4 d0) w + d1^2 = 0
        {
            Rat A = m1 * m1 - 4 * m0, B = 2 * d1 * m1 - 4 * d0, C = d1 * d1;
            std::vector<Rat> ws;
            if (A == 0) {
                if (B != 0) ws.push_back(-C / B);
            } else {
                Rat disc2 = B * B - 4 * A * C;
                if (auto sd = kth_root(disc2, 2)) {
                    ws.push_back((-B + *sd) / (2 * A));
                    ws.push_back((-B - *sd) / (2 * A));
                }
            }
            for (auto& w : ws) {
                if (w <= 0) continue;
                if (auto v = kth_root(w, 2)) {
                    if (*v != 0) {
                        Rat u = (d1 + m1 * (*v) * (*v)) / (2 * (*v));
                        sols.push_back({u, *v});
                    }
                }
            }
        }
        for (auto& [u, v] : sols) {
            FE sq = FE::from_vec(f, {u, v});
            if (sq * sq == disc) {
                FE r1 = (-b + sq) / (2 * a);
                FE r2 = (-b - sq) / (2 * a);
                out.push_back(r1);
                if (r2 != r1) out.push_back(r2);
                break;
            }
        }
    }
    return out;
}

// --------------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), 1)) {}

void RatFunc::normalize() {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator rational function");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.field(), 1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
    }
    FE lcinv = den_.lc().inv();
    num_ = num_ * lcinv;
    den_ = den_ * lcinv;
}

RatFunc RatFunc::operator-() const {
    RatFunc out = *this;
    out.num_ = -out.num_;
    return out;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero rational function");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

RatFunc RatFunc::derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

FE RatFunc::eval(const FE& x) const {
    FE d = den_.eval(x);
    if (d.is_zero()) fail(ErrorKind::DivisionByZero, "evaluation at a pole");
    return num_.eval(x) / d;
}

FE RatFunc::eval_at_infinity() const {
    int dn = num_.degree(), dd = den_.degree();
    if (dn > dd) fail(ErrorKind::DivisionByZero, "pole at infinity");
    if (dn < dd) return FE::of(field(), 0);
    return num_.lc() / den_.lc();
}

RatFunc RatFunc::compose(const RatFunc& inner) const {
    // f(g) with denominators cleared by hand: substitute x = n/d into each
    // coefficient position and homogenize.
    const FieldPtr& f = field();
    const Poly &n = inner.num_, &d = inner.den_;
    int dm = std::max(num_.degree(), den_.degree());
    auto lift = [&](const Poly& p) {
        Poly acc = Poly::zero(f);
        Poly npow = Poly::constant(f, 1);
        std::vector<Poly> npows;
        for (int i = 0; i <= dm; ++i) {
            npows.push_back(npow);
            npow = npow * n;
        }
        Poly dpow = Poly::constant(f, 1);
        for (int i = dm; i >= 0; --i) {
            if (i <= p.degree() && !p[i].is_zero()) acc = acc + npows[i] * dpow * p[i];
            if (i > 0) dpow = dpow * d;
        }
        return acc;
    };
    return RatFunc(lift(num_), lift(den_));
}

std::string RatFunc::str(const std::string& var) const {
    if (den_.is_constant()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RatFunc compose(const RatFunc& outer, const RatFunc& inner) { return outer.compose(inner); }

// --------------------------------------------------------------------- Moebius

Moebius::Moebius(FE a, FE b, FE c, FE d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if ((a_ * d_ - b_ * c_).is_zero())
        fail(ErrorKind::InvalidArgument, "singular moebius transformation");
}

Moebius Moebius::identity(const FieldPtr& f) {
    return Moebius(FE::of(f, 1), FE::of(f, 0), FE::of(f, 0), FE::of(f, 1));
}

RatFunc Moebius::as_ratfunc() const {
    const FieldPtr& f = a_.field();
    return RatFunc(Poly(f, {b_, a_}), Poly(f, {d_, c_}));
}

Moebius Moebius::inverse() const { return Moebius(d_, -b_, -c_, a_); }

std::optional<FE> Moebius::apply(const std::optional<FE>& pt) const {
    if (!pt.has_value()) {
        if (c_.is_zero()) return std::nullopt;
        return a_ / c_;
    }
    FE den = c_ * *pt + d_;
    if (den.is_zero()) return std::nullopt;
    return (a_ * *pt + b_) / den;
}

Moebius Moebius::through(const FieldPtr& f, const std::vector<std::optional<FE>>& from,
                         const std::vector<std::optional<FE>>& to) {
    if (from.size() != 3 || to.size() != 3)
        fail(ErrorKind::InvalidArgument, "moebius through requires three point pairs");
    // Map p1,p2,p3 -> 0,1,inf via the cross ratio, for both sides.
    auto standard = [&](const std::vector<std::optional<FE>>& p) {
        // m(x) = (x-p1)(p2-p3) / ((x-p3)(p2-p1)), with infinity limits.
        FE one = FE::of(f, 1), zero = FE::of(f, 0);
        auto val = [&](const std::optional<FE>& q) { return q.value_or(zero); };
        bool i1 = !p[0].has_value(), i2 = !p[1].has_value(), i3 = !p[2].has_value();
        FE p1 = val(p[0]), p2 = val(p[1]), p3 = val(p[2]);
        if (i1) return Moebius(zero, p2 - p3, one, -p3);  // (p2-p3)/(x-p3)
        if (i2) return Moebius(one, -p1, one, -p3);
        if (i3) return Moebius(one, -p1, zero, p2 - p1);
        return Moebius(p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1));
    };
    Moebius mf = standard(from), mt = standard(to);
    // result = mt^{-1} o mf
    Moebius mti = mt.inverse();
    return Moebius(mti.a() * mf.a() + mti.b() * mf.c(), mti.a() * mf.b() + mti.b() * mf.d(),
                   mti.c() * mf.a() + mti.d() * mf.c(), mti.c() * mf.b() + mti.d() * mf.d());
}

RatFunc moebius_act(const Moebius& m, const RatFunc& f, MoebiusSide side) {
    if (side == MoebiusSide::Source) return f.compose(m.as_ratfunc());
    return m.as_ratfunc().compose(f);
}

}  // namespace hpg
