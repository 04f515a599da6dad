#pragma once

#include <climits>
#include <vector>

#include "hpg/poly.hpp"

namespace hpg {

// Truncated series with exact coefficients. Exponents run over k/ram for
// k = 0..trunc-1; coefficients at or beyond trunc are unknown, and arithmetic
// never claims coefficients it cannot guarantee.
class Series {
  public:
    static constexpr int kExact = INT_MAX / 4;  // truncation of exact data

    Series() = default;
    Series(FieldPtr f, int ram, int trunc, std::vector<FE> coeffs);
    static Series zero(const FieldPtr& f, int trunc = kExact, int ram = 1);
    static Series constant(const FieldPtr& f, const FE& c, int trunc = kExact, int ram = 1);
    static Series x(const FieldPtr& f, int trunc = kExact, int ram = 1);
    static Series from_poly(const Poly& p, int ram = 1);
    // den(0) must be nonzero.
    static Series from_ratfunc(const RatFunc& f, int order, int ram = 1);

    const FieldPtr& field() const { return field_; }
    int ram() const { return ram_; }
    int trunc() const { return trunc_; }
    FE coeff(int k) const;  // coefficient of x^{k/ram}, k < trunc
    int valuation() const;  // smallest k with nonzero coeff; trunc if none seen
    bool known_zero() const { return valuation() >= trunc_; }

    Series with_ram(int new_ram) const;  // new_ram must be a multiple of ram
    Series truncated(int new_trunc) const;

    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator/(const Series& a, const Series& b);
    Series operator*(const FE& s) const;
    Series operator-() const;

    // Substitutes inner (valuation >= 1) into this series.
    Series compose(const Series& inner) const;
    // (this)^e for a series with constant term 1.
    Series pow_unit(const FE& e) const;
    // General power: factors out c * x^{v/ram}; v*e must keep exponents on
    // the current grid and c^e must be exact.
    Series pow(const Rat& e) const;
    Series inverse() const;

    // First index k < limit where the two series differ; -1 if none.
    static int first_mismatch(const Series& a, const Series& b, int limit);

    std::string str(const std::string& var = "x", int max_terms = 12) const;

  private:
    FieldPtr field_;
    int ram_ = 1;
    int trunc_ = 0;
    std::vector<FE> c_;  // padded/trimmed to min(trunc, last nonzero + 1)
    void trim();
};

struct HpgParams {
    FE a, b, c;
};

// Coefficients of 2F1(a,b;c;x) through order terms by the exact ratio
// recurrence. c must not be a non-positive integer.
Series hypergeometric_series(const HpgParams& p, int order, int ram = 1);

// Exact constant power with rational data where possible.
FE const_pow(const FE& base, const FE& exponent);

// Product of powers of polynomials that are units at x = 0, times a constant.
struct RadicalExpr {
    FE constant;
    std::vector<std::pair<Poly, FE>> factors;

    static RadicalExpr one(const FieldPtr& f);
    Series series(int order, int ram = 1) const;
    RatFunc log_derivative() const;  // sum e_i f_i' / f_i
    RadicalExpr operator*(const RadicalExpr& other) const;
    RadicalExpr pow(const FE& e) const;
    RadicalExpr specialized(const std::string& sym, const Rat& value) const;  // by evaluation
    std::string str(const std::string& var = "x") const;
};

// Terminating Appell double sums; b-parameters are -m and -n.
//   F2(a; -m,-n; c1,c2; x,y) and F3(a1,a2; -m,-n; c; x,y).
// R is any commutative ring over the same field (Series, RatFunc, FE).
template <typename R>
R appell_f2(const FE& a, int m, int n, const FE& c1, const FE& c2, const R& x, const R& y);
template <typename R>
R appell_f3(const FE& a1, const FE& a2, int m, int n, const FE& c, const R& x, const R& y);

namespace detail {
inline Series ring_const(const Series& proto, const FE& v) {
    return Series::constant(proto.field(), v, proto.trunc(), proto.ram());
}
inline RatFunc ring_const(const RatFunc& proto, const FE& v) {
    return RatFunc::constant(proto.field(), v);
}
inline FE ring_const(const FE& proto, const FE& v) { return v.lift_to(proto.field()); }
}  // namespace detail

template <typename R>
R appell_f2(const FE& a, int m, int n, const FE& c1, const FE& c2, const R& x, const R& y) {
    const FieldPtr& f = a.field();
    R sum = detail::ring_const(x, FE::of(f, 0));
    std::vector<R> xpow{detail::ring_const(x, FE::of(f, 1))};
    std::vector<R> ypow{detail::ring_const(y, FE::of(f, 1))};
    for (int i = 1; i <= m; ++i) xpow.push_back(xpow.back() * x);
    for (int j = 1; j <= n; ++j) ypow.push_back(ypow.back() * y);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) {
            FE t = FE::of(f, 1);
            for (int k = 0; k < i + j; ++k) t *= a + k;                       // (a)_{i+j}
            for (int k = 0; k < i; ++k) t *= FE::of(f, -m + k);               // (-m)_i
            for (int k = 0; k < j; ++k) t *= FE::of(f, -n + k);               // (-n)_j
            FE d = FE::of(f, 1);
            for (int k = 0; k < i; ++k) d *= c1 + k;
            for (int k = 0; k < j; ++k) d *= c2 + k;
            for (int k = 2; k <= i; ++k) d = d * (long)k;
            for (int k = 2; k <= j; ++k) d = d * (long)k;
            if (d.is_zero()) fail(ErrorKind::InvalidArgument, "forbidden lower parameter in F2");
            sum = sum + xpow[i] * ypow[j] * detail::ring_const(x, t / d);
        }
    return sum;
}

template <typename R>
R appell_f3(const FE& a1, const FE& a2, int m, int n, const FE& c, const R& x, const R& y) {
    const FieldPtr& f = a1.field();
    R sum = detail::ring_const(x, FE::of(f, 0));
    std::vector<R> xpow{detail::ring_const(x, FE::of(f, 1))};
    std::vector<R> ypow{detail::ring_const(y, FE::of(f, 1))};
    for (int i = 1; i <= m; ++i) xpow.push_back(xpow.back() * x);
    for (int j = 1; j <= n; ++j) ypow.push_back(ypow.back() * y);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) {
            FE t = FE::of(f, 1);
            for (int k = 0; k < i; ++k) t *= (a1 + k) * FE::of(f, -m + k);    // (a1)_i (-m)_i
            for (int k = 0; k < j; ++k) t *= (a2 + k) * FE::of(f, -n + k);    // (a2)_j (-n)_j
            FE d = FE::of(f, 1);
            for (int k = 0; k < i + j; ++k) d *= c + k;                       // (c)_{i+j}
            for (int k = 2; k <= i; ++k) d = d * (long)k;
            for (int k = 2; k <= j; ++k) d = d * (long)k;
            if (d.is_zero()) fail(ErrorKind::InvalidArgument, "forbidden lower parameter in F3");
            sum = sum + xpow[i] * ypow[j] * detail::ring_const(x, t / d);
        }
    return sum;
}

}  // namespace hpg
