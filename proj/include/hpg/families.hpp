#pragma once

#include <optional>
#include <string>

#include "hpg/series.hpp"

namespace hpg {

// Terminating 2F1 sum: the b-parameter side carries -n, so only terms up to
// x^n appear; lower-parameter zeros inside the range are rejected.
Poly terminating_2f1(const FE& a, const FE& b, const FE& c, int nterms, const FieldPtr& f);

// --- cyclic coverings z -> x phi_{d-1}(x), phi_{d-1} = (1-(1-x)^d)/x -------

struct CyclicCovering {
    Poly phi_tail;      // phi_{d-1}
    RatFunc covering;   // x * phi_{d-1}(x)
};
CyclicCovering cyclic_covering(int d, const FieldPtr& f);

// --- Klein coverings of the cyclic standard equation via Pade pairs -------

struct PadeCovering {
    Poly first, second;  // terminating hypergeometric pair, value 1 at 0
    RatFunc covering;    // z = 1 - (1-x)^l first^k / second^k
    int degree;
};
// Requires l/k not a non-negative integer unless l/k > m.
PadeCovering pade_covering(int k, int l, int m, int n);

// --- dihedral theta polynomials: (1+sqrt x)^d = theta1 + theta2 sqrt x ----

struct DihedralThetas {
    Poly theta1, theta2;
    RatFunc covering;  // x theta2^2 / theta1^2
};
DihedralThetas dihedral_thetas(int d, const FieldPtr& f);

// --- Klein coverings of the dihedral standard equation --------------------

struct GfdihCovering {
    Poly g_of_sqrt;     // G as a polynomial in u = sqrt x
    Poly theta1, theta2;
    RatFunc covering;   // x^{2m+1} theta2^2 / theta1^2
    int degree;         // (m+n) k + l
};
GfdihCovering gfdih_covering(int k, int l, int m, int n);

// The same polynomial from the terminating F2 route; the two definitions of
// the generating polynomial differ by a constant, returned here.
FE gfdih_f2_route_constant(int k, int l, int m, int n);

// --- elliptic layer --------------------------------------------------------

enum class CurveTag { E1, E2, E3 };  // y^2=x^3-x, y^2=x^3-1, x^3+y^3=1

// Polynomial in x and y with the y-degree kept below the curve's reduction
// bound (y^2 for E1/E2, y^3 for E3 when reducing).
struct BivarPoly {
    FieldPtr field;
    std::vector<Poly> y_coeffs;  // sum_i y^i * c_i(x)

    static BivarPoly from_x(const Poly& p);
    static BivarPoly y_times(const Poly& p, int ypow, const FieldPtr& f);
    bool is_zero() const;
    BivarPoly operator+(const BivarPoly& o) const;
    BivarPoly operator-(const BivarPoly& o) const;
    BivarPoly operator*(const BivarPoly& o) const;
};

// Reduces powers of y by the curve relation.
BivarPoly reduce_mod_curve(const BivarPoly& p, CurveTag curve);

struct BivarRat {
    BivarPoly num;
    Poly den;  // denominator in x only
};

// True iff the target curve equation vanishes identically when the map is
// substituted, modulo the source curve relation.
bool verify_curve_morphism(CurveTag source, CurveTag target, const BivarRat& X, const BivarRat& Y);

struct IsogenyMap {
    CurveTag curve;
    RatFunc psi_x;        // x-component of the isogeny
    long norm;            // degree of the isogeny
    std::string label;    // the algebraic integer, for reports
};

// The induced transformation of the hypergeometric argument:
// z -> psi_x(1/sqrt z)^{-2} on E1, z -> psi_x(z^{-1/3})^{-3} on E2.
// Exponent classes that fail to collapse signal an incompatible map.
RatFunc isogeny_covering(const IsogenyMap& iso);

// --- the P,Q,R polynomial identity and its curve morphism -----------------

struct PqrTriple {
    Poly P, Q, R;  // degrees n, 2n, 3n+1
};

bool pqr_verify(const PqrTriple& t);

// (x,y) -> (x y Q(x^-3)/P(x^-3)^2, x^3 R(x^-3)/P(x^-3)^3) from E3 to E2,
// written without negative powers.
std::pair<BivarRat, BivarRat> pqr_to_morphism(const PqrTriple& t);

// Solves the n = 0 instance over the given field (needs a fourth root of -1
// and a cube root of 4 inside the field).
std::optional<PqrTriple> solve_pqr_n0(const FieldPtr& f);

// k-th roots of a field element found through powers of the generator times
// rationals; exact and verified, but not exhaustive in general.
std::vector<FE> monomial_kth_roots(const FE& c, int k);

}  // namespace hpg
