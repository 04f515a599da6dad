#include "hpg/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hpg {

Series::Series(FieldPtr f, int ram, int trunc, std::vector<FE> coeffs)
    : field_(std::move(f)), ram_(ram), trunc_(trunc), c_(std::move(coeffs)) {
    if (ram_ < 1) fail(ErrorKind::InvalidArgument, "ramification index must be positive");
    trim();
}

void Series::trim() {
    if ((int)c_.size() > trunc_) c_.resize(std::max(trunc_, 0));
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Series Series::zero(const FieldPtr& f, int trunc, int ram) { return Series(f, ram, trunc, {}); }

Series Series::constant(const FieldPtr& f, const FE& c, int trunc, int ram) {
    return Series(f, ram, trunc, {c});
}

Series Series::x(const FieldPtr& f, int trunc, int ram) {
    std::vector<FE> c(ram + 1, FE::of(f, 0));
    c[ram] = FE::of(f, 1);
    return Series(f, ram, trunc, std::move(c));
}

Series Series::from_poly(const Poly& p, int ram) {
    if (p.is_zero()) return zero(p.field(), kExact, ram);
    std::vector<FE> c((size_t)p.degree() * ram + 1, FE::of(p.field(), 0));
    for (int i = 0; i <= p.degree(); ++i) c[(size_t)i * ram] = p[i];
    return Series(p.field(), ram, kExact, std::move(c));
}

Series Series::from_ratfunc(const RatFunc& f, int order, int ram) {
    if (f.den().constant_term().is_zero())
        fail(ErrorKind::InvalidArgument, "series expansion at a pole");
    Series n = from_poly(f.num(), ram).truncated(order * ram);
    Series d = from_poly(f.den(), ram).truncated(order * ram);
    return n / d;
}

FE Series::coeff(int k) const {
    if (k >= trunc_) fail(ErrorKind::InvalidArgument, "coefficient beyond truncation");
    if (k < 0 || k >= (int)c_.size()) return FE::of(field_, 0);
    return c_[k];
}

int Series::valuation() const {
    for (int i = 0; i < (int)c_.size(); ++i)
        if (!c_[i].is_zero()) return i;
    return trunc_;
}

Series Series::with_ram(int new_ram) const {
    if (new_ram == ram_) return *this;
    if (new_ram % ram_ != 0) fail(ErrorKind::InvalidArgument, "incompatible ramification indices");
    int k = new_ram / ram_;
    int nt = trunc_ >= kExact / k ? kExact : trunc_ * k;
    std::vector<FE> c(c_.size() * k, FE::of(field_, 0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return Series(field_, new_ram, nt, std::move(c));
}

Series Series::truncated(int new_trunc) const {
    Series out = *this;
    out.trunc_ = std::min(trunc_, new_trunc);
    out.trim();
    return out;
}

namespace {
std::pair<Series, Series> aligned(const Series& a, const Series& b) {
    int r = std::lcm(a.ram(), b.ram());
    return {a.with_ram(r), b.with_ram(r)};
}
int sat_add(int a, int b) {
    long s = (long)a + (long)b;
    return s >= Series::kExact ? Series::kExact : (int)s;
}
}  // namespace

Series operator+(const Series& a0, const Series& b0) {
    auto [a, b] = aligned(a0, b0);
    int t = std::min(a.trunc_, b.trunc_);
    size_t n = std::min((size_t)std::max(0, t), std::max(a.c_.size(), b.c_.size()));
    std::vector<FE> c(n, FE::of(a.field_, 0));
    for (size_t i = 0; i < n; ++i) {
        FE av = i < a.c_.size() ? a.c_[i] : FE::of(a.field_, 0);
        FE bv = i < b.c_.size() ? b.c_[i] : FE::of(a.field_, 0);
        c[i] = av + bv;
    }
    return Series(a.field_, a.ram_, t, std::move(c));
}

Series Series::operator-() const {
    Series out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series Series::operator*(const FE& s) const {
    Series out = *this;
    for (auto& v : out.c_) v *= s;
    out.trim();
    return out;
}

Series operator*(const Series& a0, const Series& b0) {
    auto [a, b] = aligned(a0, b0);
    // Coefficient k of the product is reliable iff k < min(ta+vb, tb+va).
    int va = a.valuation(), vb = b.valuation();
    int t = std::min(sat_add(a.trunc_, vb), sat_add(b.trunc_, va));
    if (a.c_.empty() || b.c_.empty()) return Series::zero(a.field_, t, a.ram_);
    size_t n = std::min((size_t)std::max(0, t), a.c_.size() + b.c_.size() - 1);
    std::vector<FE> c(n, FE::of(a.field_, 0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size() && i + j < n; ++j)
            if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
    }
    return Series(a.field_, a.ram_, t, std::move(c));
}

Series Series::inverse() const {
    if (c_.empty() || c_[0].is_zero())
        fail(ErrorKind::DivisionByZero, "inverse of a series with zero constant term");
    if (c_.size() == 1) return Series(field_, ram_, trunc_, {c_[0].inv()});
    if (trunc_ >= kExact)
        fail(ErrorKind::InvalidArgument, "inverse of exact series needs truncation");
    size_t n = (size_t)trunc_;
    std::vector<FE> out(n, FE::of(field_, 0));
    FE inv0 = c_[0].inv();
    out[0] = inv0;
    for (size_t k = 1; k < n; ++k) {
        FE acc = FE::of(field_, 0);
        for (size_t j = 1; j <= k && j < c_.size(); ++j) acc += c_[j] * out[k - j];
        out[k] = -(acc * inv0);
    }
    return Series(field_, ram_, trunc_, std::move(out));
}

Series operator/(const Series& a0, const Series& b0) {
    auto [a, b] = aligned(a0, b0);
    int vb = b.valuation();
    if (vb >= b.trunc_ || (vb > 0 && a.valuation() < vb))
        fail(ErrorKind::DivisionByZero, "series division by higher valuation");
    if (vb == 0) {
        int t = std::min(a.trunc_, b.trunc_);
        return (a.truncated(t) * b.truncated(t).inverse()).truncated(t);
    }
    // Shift both down by vb.
    auto shift = [&](const Series& s) {
        std::vector<FE> c(s.c_.begin() + std::min<size_t>(vb, s.c_.size()), s.c_.end());
        return Series(s.field_, s.ram_, s.trunc_ >= Series::kExact ? Series::kExact : s.trunc_ - vb,
                      std::move(c));
    };
    return shift(a) / shift(b);
}

Series Series::compose(const Series& inner) const {
    if (ram_ != 1)
        fail(ErrorKind::InvalidArgument, "composition requires an unramified outer series");
    if (inner.valuation() < 1)
        fail(ErrorKind::InvalidArgument, "series composition needs vanishing inner constant term");
    // Horner evaluation; truncations propagate through the arithmetic.
    int n = (int)c_.size();
    Series acc = Series::zero(inner.field(), kExact, inner.ram());
    for (int k = n - 1; k >= 0; --k) {
        acc = acc * inner;
        if (!c_[k].is_zero()) acc = acc + Series::constant(field_, c_[k], kExact, inner.ram());
    }
    // Truncation from the outer series' own horizon: unknown outer terms start
    // contributing at exponent trunc * valuation(inner).
    long cap = trunc_ >= kExact ? (long)kExact
                                : (long)trunc_ * std::max(1, inner.valuation());
    int t = (int)std::min<long>({(long)acc.trunc_, cap, (long)kExact});
    return acc.truncated(t);
}

Series Series::pow_unit(const FE& e) const {
    if (c_.empty() || !c_[0].is_one())
        fail(ErrorKind::InvalidArgument, "pow_unit needs constant term 1");
    // r = s^e solves s r' = e s' r; recurrence in the coefficient index.
    int t = trunc_;
    if (t >= kExact) t = kExact;
    size_t n = (size_t)t;
    if (n > (1u << 22)) fail(ErrorKind::InvalidArgument, "pow of exact series needs truncation");
    std::vector<FE> r(n, FE::of(field_, 0));
    r[0] = FE::of(field_, 1);
    FE ef = e.lift_to(field_);
    for (size_t k = 1; k < n; ++k) {
        // k r_k = sum_{j=1..k} ((e+1) j - k) s_j r_{k-j}
        FE acc = FE::of(field_, 0);
        for (size_t j = 1; j <= k && j < c_.size(); ++j) {
            if (c_[j].is_zero()) continue;
            FE w = (ef + 1) * (long)j - FE::of(field_, (long)k);
            acc += w * c_[j] * r[k - j];
        }
        r[k] = acc / (long)k;
    }
    return Series(field_, ram_, t, std::move(r));
}

Series Series::pow(const Rat& e) const {
    int v = valuation();
    if (v >= trunc_) fail(ErrorKind::InvalidArgument, "power of an all-zero truncated series");
    FE lead = c_[v];
    // exponent of the monomial part: v*e must stay on the grid
    Rat ve = Rat(v) * e;
    if (!is_integer(ve)) fail(ErrorKind::InvalidArgument, "fractional monomial power off the grid");
    long shift = ve.get_num().get_si();
    if (shift < 0) fail(ErrorKind::InvalidArgument, "negative exponent in series power");
    FE lead_pow = const_pow(lead, FE::of(field_, e));
    std::vector<FE> unit(c_.begin() + v, c_.end());
    Series u(field_, ram_, trunc_ >= kExact ? kExact : trunc_ - v, std::move(unit));
    u = u * lead.inv();
    Series p = u.pow_unit(FE::of(field_, e)) * lead_pow;
    // shift exponents back up by `shift`
    std::vector<FE> out((size_t)shift, FE::of(field_, 0));
    for (auto& v : p.c_) out.push_back(v);
    int t = p.trunc_ >= kExact ? kExact : p.trunc_ + (int)shift;
    return Series(field_, ram_, t, std::move(out));
}

int Series::first_mismatch(const Series& a0, const Series& b0, int limit) {
    auto [a, b] = aligned(a0, b0);
    int t = std::min({a.trunc_, b.trunc_, limit});
    for (int k = 0; k < t; ++k) {
        FE av = k < (int)a.c_.size() ? a.c_[k] : FE::of(a.field_, 0);
        FE bv = k < (int)b.c_.size() ? b.c_[k] : FE::of(b.field_, 0);
        if (av != bv) return k;
    }
    return -1;
}

std::string Series::str(const std::string& var, int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    bool first = true;
    for (int k = 0; k < (int)c_.size() && shown < max_terms; ++k) {
        if (c_[k].is_zero()) continue;
        std::string cs = c_[k].str();
        if (!first) os << (cs[0] == '-' ? " " : " + ");
        if (k == 0)
            os << cs;
        else {
            os << (cs == "1" ? "" : cs == "-1" ? "-" : "(" + cs + ")*") << var;
            if (ram_ == 1) {
                if (k > 1) os << "^" << k;
            } else {
                os << "^(" << k << "/" << ram_ << ")";
            }
        }
        first = false;
        ++shown;
    }
    if (first) os << "0";
    if (trunc_ < kExact) os << " + O(" << var << "^" << trunc_ << "/" << ram_ << ")";
    return os.str();
}

Series hypergeometric_series(const HpgParams& p, int order, int ram) {
    const FieldPtr& f = p.a.field();
    if (p.c.is_rational()) {
        Rat c = p.c.to_rat();
        if (is_integer(c) && c <= 0)
            fail(ErrorKind::InvalidArgument, "hypergeometric c is a non-positive integer");
    }
    if (order < 1) fail(ErrorKind::InvalidArgument, "order must be at least 1");
    std::vector<FE> coeffs((size_t)order, FE::of(f, 0));
    FE cur = FE::of(f, 1);
    coeffs[0] = cur;
    for (int k = 0; k + 1 < order; ++k) {
        FE den = (p.c + k) * FE::of(f, k + 1);
        if (den.is_zero()) fail(ErrorKind::InvalidArgument, "hypergeometric recurrence hit zero");
        cur = cur * (p.a + k) * (p.b + k) / den;
        coeffs[k + 1] = cur;
    }
    Series s(f, 1, order, std::move(coeffs));
    return ram == 1 ? s : s.with_ram(ram);
}

FE const_pow(const FE& base, const FE& exponent) {
    const FieldPtr& f = base.field();
    if (base.is_one()) return base;
    if (exponent.is_rational()) {
        Rat e = exponent.to_rat();
        if (is_integer(e)) return base.pow(e.get_num().get_si());
        if (base.is_rational()) {
            Rat b = base.to_rat();
            unsigned long q = e.get_den().get_ui();
            if (auto root = kth_root(b, (unsigned)q)) {
                FE r = FE::of(f, *root);
                return r.pow(e.get_num().get_si());
            }
        }
    }
    fail(ErrorKind::InvalidArgument, "cannot take exact constant power");
}

RadicalExpr RadicalExpr::one(const FieldPtr& f) { return RadicalExpr{FE::of(f, 1), {}}; }

Series RadicalExpr::series(int order, int ram) const {
    const FieldPtr& f = constant.field();
    Series acc = Series::constant(f, constant, order * ram, ram);
    for (auto& [base, e] : factors) {
        FE b0 = base.constant_term();
        if (b0.is_zero())
            fail(ErrorKind::InvalidArgument, "radical base vanishes at 0: " + base.str());
        Series bs = Series::from_poly(base * b0.inv(), ram).truncated(order * ram);
        acc = acc * bs.pow_unit(e) * const_pow(b0, e);
    }
    return acc;
}

RatFunc RadicalExpr::log_derivative() const {
    FieldPtr f = constant.field();
    RatFunc acc(Poly::zero(f), Poly::constant(f, 1));
    for (auto& [base, e] : factors)
        acc = acc + RatFunc(base.derivative() * e, base);
    return acc;
}

RadicalExpr RadicalExpr::operator*(const RadicalExpr& other) const {
    RadicalExpr out = *this;
    out.constant = out.constant * other.constant;
    for (auto& fe : other.factors) out.factors.push_back(fe);
    return out;
}

RadicalExpr RadicalExpr::pow(const FE& e) const {
    RadicalExpr out = *this;
    out.constant = const_pow(out.constant, e);
    for (auto& [base, ex] : out.factors) ex = ex * e;
    return out;
}

std::string RadicalExpr::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    if (!constant.is_one() || factors.empty()) {
        os << constant.str();
        first = false;
    }
    for (auto& [base, e] : factors) {
        if (!first) os << "*";
        os << "(" << base.str(var) << ")^(" << e.str() << ")";
        first = false;
    }
    return os.str();
}

}  // namespace hpg
