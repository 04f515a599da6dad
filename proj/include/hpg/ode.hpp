#pragma once

#include <optional>
#include <vector>

#include "hpg/series.hpp"

namespace hpg {

// Second-order linear ODE p2 y'' + p1 y' + p0 y = 0 with polynomial
// coefficients, stored with common polynomial content removed.
struct LinearODE2 {
    Poly p2, p1, p0;

    LinearODE2() = default;
    LinearODE2(Poly c2, Poly c1, Poly c0);
    const FieldPtr& field() const { return p2.field(); }
    std::string str(const std::string& var = "x") const;
};

LinearODE2 hpg_operator(const HpgParams& p, const FieldPtr& field);

// Equation satisfied by theta(x) * y(phi(x)) when y solves `ode`.
LinearODE2 pullback_ode(const LinearODE2& ode, const RatFunc& phi, const RadicalExpr& theta);

// Equation satisfied by w(x) * y(x) where w has rational log-derivative r.
LinearODE2 conjugate_by_radical(const LinearODE2& ode, const RatFunc& log_deriv);

// A point of P^1; nullopt is the point at infinity.
using Point = std::optional<FE>;

struct IndicialRoots {
    FE lo, hi;        // sorted when the difference is rational; else arbitrary
    bool rational_difference;
};
IndicialRoots indicial_exponents(const LinearODE2& ode, const Point& pt);

// Frobenius obstruction test. Requires the exponent difference to be a
// non-negative integer at the point (else the point is trivially not
// logarithmic). Equal exponents are always logarithmic.
bool is_logarithmic(const LinearODE2& ode, const Point& pt);

enum class SingClass { Nonsingular, Irrelevant, Apparent, Logarithmic, RelevantNonlog };

struct SingularPointData {
    Point location;
    FE e1, e2;      // local exponents
    FE difference;  // e2 - e1 normalized non-negative when rational
    SingClass cls;
};

std::vector<SingularPointData> classify_singularities(const LinearODE2& ode);

struct RecognizedHpg {
    Moebius map;  // source relabeling that puts the singular points at 0,1,inf
    HpgParams params;
};

// Succeeds when the equation has exactly three relevant singular points that
// can be moved to 0, 1, infinity over the coefficient field and the local
// exponents there have the hypergeometric shape ({0,*} at 0 and 1).
std::optional<RecognizedHpg> recognize_hypergeometric(const LinearODE2& ode);

// Unordered comparison of parameter sets {A,B},C.
bool same_hpg_params(const HpgParams& a, const HpgParams& b);

}  // namespace hpg
