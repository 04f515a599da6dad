#include "hpg/field.hpp"

#include <algorithm>
#include <sstream>

namespace hpg {

namespace {

using Vec = NumberField::Vec;

// --- dense univariate polynomial helpers over Q (for minpoly checks) ---

int qdeg(const std::vector<Rat>& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

std::vector<Rat> all_rational_roots(const std::vector<Rat>& p) {
    // Clear denominators, then run the rational root test.
    std::vector<Rat> out;
    Int lcm = 1;
    for (auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Int> z;
    for (auto& c : p) z.push_back(Int(c * Rat(lcm)));
    int d = qdeg(p);
    int lo = 0;
    while (lo <= d && z[lo] == 0) ++lo;
    if (lo > 0) out.push_back(Rat(0));
    if (lo > d) return out;
    Int a0 = z[lo], ad = z[d];
    if (a0 < 0) a0 = -a0;
    if (ad < 0) ad = -ad;
    auto divisors = [](const Int& n) {
        std::vector<Int> v;
        for (Int i = 1; i * i <= n; ++i)
            if (n % i == 0) {
                v.push_back(i);
                if (i * i != n) v.push_back(n / i);
            }
        return v;
    };
    for (auto& pn : divisors(a0))
        for (auto& qn : divisors(ad))
            for (int s = -1; s <= 1; s += 2) {
                Rat cand(s * pn, qn);
                cand.canonicalize();
                Rat v = 0;
                for (int i = d; i >= 0; --i) v = v * cand + p[i];
                if (v == 0 && std::find(out.begin(), out.end(), cand) == out.end())
                    out.push_back(cand);
            }
    return out;
}

bool has_rational_root(const std::vector<Rat>& p) { return !all_rational_roots(p).empty(); }

std::vector<Rat> all_rational_roots(const std::vector<Rat>& p);

// Decides whether a monic rational quartic splits into two monic rational
// quadratics (x^2+bx+c)(x^2+dx+e). Candidate b values come from the resolvent
// cubic, whose roots are c+e over the three root pairings.
bool quartic_has_quadratic_factor(const std::vector<Rat>& p) {
    Rat p3 = p[3], p2 = p[2], p1 = p[1], p0 = p[0];
    std::vector<Rat> res = {-(p1 * p1 + p0 * p3 * p3 - 4 * p0 * p2), p1 * p3 - 4 * p0, -p2,
                            Rat(1)};
    for (const Rat& y0 : all_rational_roots(res)) {
        // b+d = p3, bd = p2-y0, c+e = y0, be+cd = p1, ce = p0.
        Rat disc = p3 * p3 - 4 * (p2 - y0);
        auto sq = kth_root(disc, 2);
        if (!sq) continue;
        for (int s = -1; s <= 1; s += 2) {
            Rat b = (p3 + s * *sq) / 2;
            Rat d = p3 - b;
            if (b != d) {
                Rat c = (p1 - b * y0) / (d - b);
                Rat e = y0 - c;
                if (c * e == p0) return true;
            } else {
                if (b * y0 != p1) continue;
                if (kth_root(y0 * y0 - 4 * p0, 2)) return true;
            }
        }
    }
    return false;
}

bool irreducible_over_q(const std::vector<Rat>& m) {
    int d = qdeg(m);
    if (d <= 1) return true;
    if (has_rational_root(m)) return false;
    if (d <= 3) return true;  // no root and degree <= 3
    if (d == 4) return !quartic_has_quadratic_factor(m);
    return true;  // trusted, flagged by caller
}

}  // namespace

// ---------------------------------------------------------------- NumberField

NumberFieldPtr NumberField::rationals() {
    static NumberFieldPtr q(new NumberField("", {Rat(0), Rat(1)}, true));
    return q;
}

NumberFieldPtr NumberField::make(std::string generator, std::vector<Rat> min_poly) {
    if (min_poly.size() < 2) fail(ErrorKind::InvalidArgument, "minimal polynomial of degree < 1");
    if (min_poly.back() != 1) fail(ErrorKind::InvalidArgument, "minimal polynomial must be monic");
    if (min_poly.size() == 2) return rationals();
    bool verified = (int)min_poly.size() - 1 <= 4;
    if (verified && !irreducible_over_q(min_poly))
        fail(ErrorKind::InvalidArgument, "minimal polynomial is reducible over Q");
    return NumberFieldPtr(new NumberField(std::move(generator), std::move(min_poly), verified));
}

Vec NumberField::from_rat(const Rat& r) const {
    Vec v(degree(), Rat(0));
    v[0] = r;
    return v;
}

Vec NumberField::gen() const {
    if (is_q()) fail(ErrorKind::InvalidArgument, "Q has no generator");
    Vec v(degree(), Rat(0));
    v[1] = 1;
    return v;
}

bool NumberField::is_zero(const Vec& a) {
    for (auto& c : a)
        if (c != 0) return false;
    return true;
}

Vec NumberField::add(const Vec& a, const Vec& b) const {
    Vec out(degree());
    for (int i = 0; i < degree(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec NumberField::sub(const Vec& a, const Vec& b) const {
    Vec out(degree());
    for (int i = 0; i < degree(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec NumberField::neg(const Vec& a) const {
    Vec out(degree());
    for (int i = 0; i < degree(); ++i) out[i] = -a[i];
    return out;
}

Vec NumberField::mul(const Vec& a, const Vec& b) const {
    int n = degree();
    std::vector<Rat> prod(2 * n - 1, Rat(0));
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    // Reduce modulo the monic minimal polynomial.
    for (int i = 2 * n - 2; i >= n; --i) {
        if (prod[i] == 0) continue;
        Rat c = prod[i];
        prod[i] = 0;
        for (int j = 0; j < n; ++j) prod[i - n + j] -= c * min_poly_[j];
    }
    prod.resize(n);
    return prod;
}

Vec NumberField::inv(const Vec& a) const {
    if (is_zero(a)) fail(ErrorKind::DivisionByZero, "inverse of zero in " + generator_);
    int n = degree();
    if (n == 1) return {1 / a[0]};
    // Extended Euclid in Q[t] for gcd(a, minpoly) = 1.
    std::vector<Rat> r0(min_poly_), r1(a);
    r1.resize(n + 1, Rat(0));
    std::vector<Rat> s0(n + 1, Rat(0)), s1(n + 1, Rat(0));
    s1[0] = 1;  // s tracks the coefficient of `a`
    auto deg = [](const std::vector<Rat>& p) { return qdeg(p); };
    while (deg(r1) > 0) {
        // divide r0 by r1
        std::vector<Rat> q(n + 1, Rat(0));
        std::vector<Rat> rem(r0);
        int d1 = deg(r1);
        Rat lc = r1[d1];
        for (int d0 = deg(rem); d0 >= d1; d0 = deg(rem)) {
            if (d0 < 0) break;
            Rat f = rem[d0] / lc;
            q[d0 - d1] += f;
            for (int i = 0; i <= d1; ++i) rem[d0 - d1 + i] -= f * r1[i];
            rem[d0] = 0;  // guard against residue
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        std::vector<Rat> s2(n + 1, Rat(0));
        for (int i = 0; i <= n; ++i) s2[i] = s0[i];
        for (int i = 0; i <= n; ++i)
            if (q[i] != 0)
                for (int j = 0; j + i <= n; ++j) s2[i + j] -= q[i] * s1[j];
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    int d = deg(r1);
    if (d < 0) fail(ErrorKind::DivisionByZero, "element not invertible (reducible modulus?)");
    Rat c = r1[0];
    Vec out(n, Rat(0));
    for (int i = 0; i < n; ++i) out[i] = s1[i] / c;
    return out;
}

std::string NumberField::str(const Vec& a) const {
    if (is_q()) return to_string(a[0]);
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < degree(); ++i) {
        if (a[i] == 0) continue;
        if (!first && a[i] > 0) os << "+";
        if (i == 0) {
            os << to_string(a[i]);
        } else {
            if (a[i] == -1)
                os << "-";
            else if (a[i] != 1)
                os << to_string(a[i]) << "*";
            os << generator_;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

// ---------------------------------------------------------------------- Field

FieldPtr Field::q() {
    static FieldPtr f(new Field(NumberField::rationals(), false, ""));
    return f;
}

FieldPtr Field::of(NumberFieldPtr nf) {
    if (nf->is_q()) return q();
    return FieldPtr(new Field(std::move(nf), false, ""));
}

FieldPtr Field::with_param(NumberFieldPtr nf, std::string param) {
    return FieldPtr(new Field(std::move(nf), true, std::move(param)));
}

bool Field::same(const Field& other) const {
    if (this == &other) return true;
    if (has_param_ != other.has_param_) return false;
    if (has_param_ && param_ != other.param_) return false;
    return nf_ == other.nf_ || nf_->min_poly() == other.nf_->min_poly();
}

std::string Field::describe() const {
    std::string base = nf_->is_q() ? "Q" : "Q(" + nf_->generator() + ")";
    return has_param_ ? base + "(" + param_ + ")" : base;
}

// ------------------------------------------------------------------------- FE

namespace {

int pdeg(const std::vector<Vec>& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (!NumberField::is_zero(p[i])) return i;
    return -1;
}

std::vector<Vec> ptrim(std::vector<Vec> p) {
    p.resize(std::max(0, pdeg(p) + 1));
    return p;
}

std::vector<Vec> pmul(const NumberField& nf, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Vec> out(a.size() + b.size() - 1, nf.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (NumberField::is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!NumberField::is_zero(b[j])) out[i + j] = nf.add(out[i + j], nf.mul(a[i], b[j]));
    }
    return ptrim(out);
}

std::vector<Vec> padd(const NumberField& nf, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::vector<Vec> out(std::max(a.size(), b.size()), nf.zero());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] = nf.add(out[i], b[i]);
    return ptrim(out);
}

std::vector<Vec> pneg(const NumberField& nf, std::vector<Vec> a) {
    for (auto& c : a) c = nf.neg(c);
    return a;
}

// Remainder of a by b (b nonzero), in K[t].
std::vector<Vec> prem(const NumberField& nf, std::vector<Vec> a, const std::vector<Vec>& b) {
    int db = pdeg(b);
    Vec lcinv = nf.inv(b[db]);
    for (int da = pdeg(a); da >= db; da = pdeg(a)) {
        Vec f = nf.mul(a[da], lcinv);
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = nf.sub(a[da - db + i], nf.mul(f, b[i]));
        a[da] = nf.zero();
    }
    return ptrim(a);
}

std::vector<Vec> pgcd(const NumberField& nf, std::vector<Vec> a, std::vector<Vec> b) {
    a = ptrim(a);
    b = ptrim(b);
    while (pdeg(b) >= 0) {
        auto r = prem(nf, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (pdeg(a) < 0) return a;
    Vec lcinv = nf.inv(a[pdeg(a)]);
    for (auto& c : a) c = nf.mul(c, lcinv);  // monic gcd
    return a;
}

// Exact quotient (remainder must be zero).
std::vector<Vec> pquo(const NumberField& nf, std::vector<Vec> a, const std::vector<Vec>& b) {
    int db = pdeg(b);
    Vec lcinv = nf.inv(b[db]);
    int da = pdeg(a);
    if (da < db) return {};
    std::vector<Vec> q(da - db + 1, nf.zero());
    for (; da >= db; da = pdeg(a)) {
        Vec f = nf.mul(a[da], lcinv);
        q[da - db] = f;
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = nf.sub(a[da - db + i], nf.mul(f, b[i]));
        a[da] = nf.zero();
    }
    return ptrim(q);
}

}  // namespace

void FE::check_same(const FE& a, const FE& b) {
    if (!a.field_ || !b.field_) fail(ErrorKind::InvalidArgument, "uninitialized field element");
    if (!a.field_->same(*b.field_))
        fail(ErrorKind::FieldMismatch,
             "field mismatch: " + a.field_->describe() + " vs " + b.field_->describe());
}

FE FE::of(const FieldPtr& f, const Rat& r) {
    FE e;
    e.field_ = f;
    e.num_ = {f->number_field()->from_rat(r)};
    e.den_ = {f->number_field()->one()};
    e.normalize();
    return e;
}

FE FE::generator(const FieldPtr& f) {
    FE e;
    e.field_ = f;
    e.num_ = {f->number_field()->gen()};
    e.den_ = {f->number_field()->one()};
    return e;
}

FE FE::parameter(const FieldPtr& f) {
    if (!f->has_param()) fail(ErrorKind::InvalidArgument, "field has no formal parameter");
    FE e;
    e.field_ = f;
    e.num_ = {f->number_field()->zero(), f->number_field()->one()};
    e.den_ = {f->number_field()->one()};
    return e;
}

FE FE::from_vec(const FieldPtr& f, NumberField::Vec v) {
    if ((int)v.size() != f->number_field()->degree())
        fail(ErrorKind::InvalidArgument, "coefficient vector length mismatch");
    FE e;
    e.field_ = f;
    e.num_ = {std::move(v)};
    e.den_ = {f->number_field()->one()};
    e.normalize();
    return e;
}

FE FE::param_poly(const FieldPtr& f, std::vector<NumberField::Vec> coeffs) {
    if (!f->has_param()) fail(ErrorKind::InvalidArgument, "field has no formal parameter");
    FE e;
    e.field_ = f;
    e.num_ = std::move(coeffs);
    e.den_ = {f->number_field()->one()};
    e.normalize();
    return e;
}

void FE::normalize() {
    const auto& nf = *field_->number_field();
    num_ = ptrim(num_);
    den_ = ptrim(den_);
    if (pdeg(den_) < 0) fail(ErrorKind::DivisionByZero, "zero denominator in " + field_->describe());
    if (pdeg(num_) < 0) {
        num_.clear();
        den_ = {nf.one()};
        return;
    }
    if (!field_->has_param() || (pdeg(num_) == 0 && pdeg(den_) == 0)) {
        // constant fraction: divide through
        Vec v = nf.mul(num_.empty() ? nf.zero() : num_[0], nf.inv(den_[0]));
        num_ = {std::move(v)};
        den_ = {nf.one()};
        num_ = ptrim(num_);
        return;
    }
    auto g = pgcd(nf, num_, den_);
    if (pdeg(g) > 0) {
        num_ = pquo(nf, num_, g);
        den_ = pquo(nf, den_, g);
    }
    Vec lcinv = nf.inv(den_[pdeg(den_)]);
    for (auto& c : den_) c = nf.mul(c, lcinv);
    for (auto& c : num_) c = nf.mul(c, lcinv);
}

bool FE::is_zero() const { return num_.empty(); }

bool FE::is_one() const {
    return pdeg(num_) == 0 && pdeg(den_) == 0 && num_[0] == field_->number_field()->one();
}

bool FE::is_constant() const { return pdeg(num_) <= 0 && pdeg(den_) == 0; }

bool FE::is_rational() const {
    if (!is_constant()) return false;
    if (num_.empty()) return true;
    for (size_t i = 1; i < num_[0].size(); ++i)
        if (num_[0][i] != 0) return false;
    return true;
}

Rat FE::to_rat() const {
    if (!is_rational()) fail(ErrorKind::InvalidArgument, "element is not rational: " + str());
    return num_.empty() ? Rat(0) : num_[0][0];
}

NumberField::Vec FE::constant_vec() const {
    if (!is_constant()) fail(ErrorKind::InvalidArgument, "element depends on the parameter");
    return num_.empty() ? field_->number_field()->zero() : num_[0];
}

FE FE::operator-() const {
    FE out = *this;
    out.num_ = pneg(*field_->number_field(), out.num_);
    return out;
}

FE operator+(const FE& a, const FE& b) {
    FE::check_same(a, b);
    const auto& nf = *a.field_->number_field();
    FE out;
    out.field_ = a.field_;
    out.num_ = padd(nf, pmul(nf, a.num_, b.den_), pmul(nf, b.num_, a.den_));
    out.den_ = pmul(nf, a.den_, b.den_);
    out.normalize();
    return out;
}

FE operator-(const FE& a, const FE& b) { return a + (-b); }

FE operator*(const FE& a, const FE& b) {
    FE::check_same(a, b);
    const auto& nf = *a.field_->number_field();
    FE out;
    out.field_ = a.field_;
    out.num_ = pmul(nf, a.num_, b.num_);
    out.den_ = pmul(nf, a.den_, b.den_);
    out.normalize();
    return out;
}

FE FE::inv() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "division by zero in " + field_->describe());
    FE out;
    out.field_ = field_;
    out.num_ = den_;
    out.den_ = num_;
    out.normalize();
    return out;
}

FE operator/(const FE& a, const FE& b) {
    FE::check_same(a, b);
    return a * b.inv();
}

bool operator==(const FE& a, const FE& b) {
    FE::check_same(a, b);
    return a.num_ == b.num_ && a.den_ == b.den_;
}

FE FE::pow(long e) const {
    FE base = *this;
    if (e < 0) {
        base = base.inv();
        e = -e;
    }
    FE out = FE::of(field_, 1);
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

FE FE::specialize(const Rat& value) const {
    if (!field_->has_param()) return *this;
    const auto& nfp = field_->number_field();
    const auto& nf = *nfp;
    FE v;
    auto eval = [&](const std::vector<NumberField::Vec>& p) {
        Vec acc = nf.zero();
        Vec x = nf.from_rat(value);
        for (int i = pdeg(p); i >= 0; --i) acc = nf.add(nf.mul(acc, x), p[i]);
        return acc;
    };
    Vec den = eval(den_);
    if (NumberField::is_zero(den))
        fail(ErrorKind::PoleAtSample,
             "pole at " + field_->param_name() + "=" + to_string(value));
    FieldPtr target = Field::of(nfp);
    FE out;
    out.field_ = target;
    out.num_ = {nf.mul(eval(num_), nf.inv(den))};
    out.den_ = {nf.one()};
    out.normalize();
    return out;
}

FE FE::lift_to(const FieldPtr& target) const {
    if (field_->has_param()) {
        if (!target->same(*field_)) fail(ErrorKind::FieldMismatch, "cannot lift between parameter fields");
        return *this;
    }
    if (target->number_field()->degree() != field_->number_field()->degree())
        fail(ErrorKind::FieldMismatch, "lift across different number fields");
    FE out;
    out.field_ = target;
    out.num_ = num_;
    out.den_ = {target->number_field()->one()};
    return out;
}

std::string FE::str() const {
    const auto& nf = *field_->number_field();
    if (is_constant()) return nf.str(num_.empty() ? nf.zero() : num_[0]);
    auto poly_str = [&](const std::vector<NumberField::Vec>& p) {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i <= pdeg(p); ++i) {
            if (NumberField::is_zero(p[i])) continue;
            std::string c = nf.str(p[i]);
            bool plain = c.find('+') == std::string::npos &&
                         c.find('-', 1) == std::string::npos;
            if (!first && !(plain && c[0] == '-')) os << "+";
            if (i == 0) {
                os << (plain ? c : "(" + c + ")");
            } else {
                if (c == "1") {
                } else if (c == "-1") {
                    os << "-";
                } else if (!plain || c.find('*') != std::string::npos) {
                    os << "(" << c << ")*";
                } else {
                    os << c << "*";
                }
                os << field_->param_name();
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return first ? std::string("0") : os.str();
    };
    std::string n = poly_str(num_);
    if (pdeg(den_) == 0 && den_[0] == nf.one()) return n;
    return "(" + n + ")/(" + poly_str(den_) + ")";
}

int FE::cmp(const FE& a, const FE& b) {
    auto vcmp = [](const std::vector<NumberField::Vec>& x, const std::vector<NumberField::Vec>& y) {
        if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
        for (size_t i = 0; i < x.size(); ++i)
            for (size_t j = 0; j < x[i].size(); ++j) {
                if (x[i][j] < y[i][j]) return -1;
                if (x[i][j] > y[i][j]) return 1;
            }
        return 0;
    };
    int c = vcmp(a.num_, b.num_);
    return c != 0 ? c : vcmp(a.den_, b.den_);
}

}  // namespace hpg
