#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hpg/rational.hpp"

namespace hpg {

// A simple extension Q(g) = Q[t]/(m(t)) with m monic. Degree 1 is Q itself.
// Irreducibility of m is verified up to degree 4 (rational roots plus
// quadratic-factor search); higher degrees are accepted with a warning flag.
class NumberField {
  public:
    static std::shared_ptr<const NumberField> rationals();
    static std::shared_ptr<const NumberField> make(std::string generator, std::vector<Rat> min_poly);

    const std::string& generator() const { return generator_; }
    const std::vector<Rat>& min_poly() const { return min_poly_; }
    int degree() const { return (int)min_poly_.size() - 1; }
    bool is_q() const { return degree() == 1; }
    bool irreducibility_verified() const { return irreducibility_verified_; }

    // Arithmetic on coefficient vectors of length degree().
    using Vec = std::vector<Rat>;
    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec neg(const Vec& a) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec inv(const Vec& a) const;
    Vec from_rat(const Rat& r) const;
    Vec zero() const { return from_rat(Rat(0)); }
    Vec one() const { return from_rat(Rat(1)); }
    Vec gen() const;
    static bool is_zero(const Vec& a);
    std::string str(const Vec& a) const;

  private:
    NumberField(std::string generator, std::vector<Rat> min_poly, bool verified)
        : generator_(std::move(generator)), min_poly_(std::move(min_poly)),
          irreducibility_verified_(verified) {}
    std::string generator_;
    std::vector<Rat> min_poly_;
    bool irreducibility_verified_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

// Coefficient domain of the engine: a number field K, optionally extended to
// the rational-function field K(a) in one formal parameter.
class Field {
  public:
    static std::shared_ptr<const Field> q();
    static std::shared_ptr<const Field> of(NumberFieldPtr nf);
    static std::shared_ptr<const Field> with_param(NumberFieldPtr nf, std::string param = "a");

    const NumberFieldPtr& number_field() const { return nf_; }
    bool has_param() const { return has_param_; }
    const std::string& param_name() const { return param_; }
    bool same(const Field& other) const;
    std::string describe() const;

  private:
    Field(NumberFieldPtr nf, bool has_param, std::string param)
        : nf_(std::move(nf)), has_param_(has_param), param_(std::move(param)) {}
    NumberFieldPtr nf_;
    bool has_param_;
    std::string param_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Exact field element. Over K it is a coefficient vector; over K(a) a reduced
// fraction of polynomials in the parameter with monic denominator.
class FE {
  public:
    FE() = default;

    static FE of(const FieldPtr& f, const Rat& r);
    static FE of(const FieldPtr& f, long n) { return of(f, Rat(n)); }
    static FE generator(const FieldPtr& f);
    static FE parameter(const FieldPtr& f);
    static FE from_vec(const FieldPtr& f, NumberField::Vec v);
    // Polynomial in the parameter, coefficients lowest-degree first.
    static FE param_poly(const FieldPtr& f, std::vector<NumberField::Vec> coeffs);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;   // lies in Q
    Rat to_rat() const;         // requires is_rational()
    bool is_constant() const;   // no parameter dependence
    NumberField::Vec constant_vec() const;

    FE operator-() const;
    FE inv() const;
    FE pow(long e) const;

    friend FE operator+(const FE& a, const FE& b);
    friend FE operator-(const FE& a, const FE& b);
    friend FE operator*(const FE& a, const FE& b);
    friend FE operator/(const FE& a, const FE& b);
    friend bool operator==(const FE& a, const FE& b);
    friend bool operator!=(const FE& a, const FE& b) { return !(a == b); }

    FE& operator+=(const FE& b) { return *this = *this + b; }
    FE& operator-=(const FE& b) { return *this = *this - b; }
    FE& operator*=(const FE& b) { return *this = *this * b; }
    FE& operator/=(const FE& b) { return *this = *this / b; }

    // Evaluates the parameter at a rational; errors with PoleAtSample if the
    // denominator vanishes there. Result lives in the parameter-free field.
    FE specialize(const Rat& value) const;
    // Lifts an element of K into K(a).
    FE lift_to(const FieldPtr& target) const;

    std::string str() const;

    // Raw fraction payload: polynomials in the parameter over the base field.
    const std::vector<NumberField::Vec>& param_num() const { return num_; }
    const std::vector<NumberField::Vec>& param_den() const { return den_; }

    // Total order for canonical sorting; not meaningful numerically.
    static int cmp(const FE& a, const FE& b);

  private:
    FieldPtr field_;
    // Constant payload (param-free field): single-entry num_, den_ = {one}.
    // Param payload: polynomials in the parameter over K.
    std::vector<NumberField::Vec> num_, den_;
    void normalize();
    static void check_same(const FE& a, const FE& b);
};

// Convenience arithmetic against small constants.
inline FE operator+(const FE& a, long b) { return a + FE::of(a.field(), b); }
inline FE operator-(const FE& a, long b) { return a - FE::of(a.field(), b); }
inline FE operator*(const FE& a, long b) { return a * FE::of(a.field(), b); }
inline FE operator+(long a, const FE& b) { return FE::of(b.field(), a) + b; }
inline FE operator-(long a, const FE& b) { return FE::of(b.field(), a) - b; }
inline FE operator*(long a, const FE& b) { return FE::of(b.field(), a) * b; }
inline FE operator/(const FE& a, long b) { return a / FE::of(a.field(), b); }

}  // namespace hpg
