#pragma once

#include <utility>
#include <vector>

#include "hpg/field.hpp"

namespace hpg {

// Dense univariate polynomial over a runtime field, coefficients lowest
// degree first. The zero polynomial has an empty coefficient list.
class Poly {
  public:
    Poly() = default;
    Poly(FieldPtr f, std::vector<FE> coeffs);
    static Poly zero(const FieldPtr& f) { return Poly(f, {}); }
    static Poly constant(const FieldPtr& f, const FE& c) { return Poly(f, {c}); }
    static Poly constant(const FieldPtr& f, long c) { return Poly(f, {FE::of(f, c)}); }
    static Poly x(const FieldPtr& f) { return Poly(f, {FE::of(f, 0), FE::of(f, 1)}); }
    // From integer/rational coefficient lists, lowest degree first.
    static Poly from_rats(const FieldPtr& f, const std::vector<Rat>& coeffs);

    const FieldPtr& field() const { return field_; }
    int degree() const { return (int)c_.size() - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<FE>& coeffs() const { return c_; }
    const FE& operator[](int i) const { return c_[i]; }
    FE coeff(int i) const;  // 0 beyond the stored range
    const FE& lc() const;   // leading coefficient, requires nonzero
    FE constant_term() const { return coeff(0); }

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator*(const FE& s) const;
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly monic() const;
    Poly derivative() const;
    FE eval(const FE& x) const;
    Poly compose(const Poly& inner) const;
    Poly shifted(const FE& s) const;   // p(x + s)
    Poly reversed(int target_deg = -1) const;  // x^n p(1/x)
    Poly pow(int e) const;
    std::string str(const std::string& var = "x") const;

  private:
    FieldPtr field_;
    std::vector<FE> c_;
    void trim();
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic
Poly exact_div(const Poly& a, const Poly& b);

// p = lc * prod f_i^{m_i} with the f_i squarefree, monic, pairwise coprime
// and the m_i strictly increasing.
struct SquarefreeFactor {
    Poly factor;
    int multiplicity;
};
std::vector<SquarefreeFactor> squarefree_decompose(const Poly& p);

// Resultant with respect to the polynomials' variable (Sylvester matrix over
// the coefficient field, evaluated by fraction-free elimination).
FE resultant(const Poly& a, const Poly& b);

// Rational roots (over Q) of a polynomial with rational coefficients, and
// roots lying in the coefficient number field (degree <= 2 handled).
std::vector<Rat> rational_roots(const Poly& p);
std::vector<FE> field_roots(const Poly& p);

// Rational function in lowest terms with monic denominator.
class RatFunc {
  public:
    RatFunc() = default;
    RatFunc(Poly num, Poly den);
    explicit RatFunc(Poly num);
    static RatFunc x(const FieldPtr& f) { return RatFunc(Poly::x(f)); }
    static RatFunc constant(const FieldPtr& f, const FE& c) { return RatFunc(Poly::constant(f, c)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    int map_degree() const { return std::max(num_.degree(), den_.degree()); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc derivative() const;
    FE eval(const FE& x) const;                 // den(x) must not vanish
    FE eval_at_infinity() const;                // requires deg num <= deg den
    RatFunc compose(const RatFunc& inner) const;
    std::string str(const std::string& var = "x") const;

  private:
    Poly num_, den_;
    void normalize();
};

// x -> (a x + b) / (c x + d), ad - bc != 0.
class Moebius {
  public:
    Moebius(FE a, FE b, FE c, FE d);
    static Moebius identity(const FieldPtr& f);
    // The unique Moebius map sending three distinct points to three distinct
    // points; entries may be the infinity marker below.
    struct PointAtInfinity {};
    static Moebius through(const FieldPtr& f, const std::vector<std::optional<FE>>& from,
                           const std::vector<std::optional<FE>>& to);

    const FE& a() const { return a_; }
    const FE& b() const { return b_; }
    const FE& c() const { return c_; }
    const FE& d() const { return d_; }
    RatFunc as_ratfunc() const;
    Moebius inverse() const;
    std::optional<FE> apply(const std::optional<FE>& pt) const;  // nullopt = infinity

  private:
    FE a_, b_, c_, d_;
};

enum class MoebiusSide { Source, Target };
RatFunc moebius_act(const Moebius& m, const RatFunc& f, MoebiusSide side);

RatFunc compose(const RatFunc& outer, const RatFunc& inner);

}  // namespace hpg
