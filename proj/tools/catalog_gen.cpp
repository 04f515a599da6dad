// Maintenance generator for data/catalog.txt: builds every covering, derives
// the identities the literature leaves implicit, certifies each entry at a
// moderate order, and emits the catalog in the documented format.
#include <iostream>
#include <sstream>

#include "hpg/catalog.hpp"
#include "hpg/enumerate.hpp"
#include "hpg/families.hpp"
#include "hpg/solver.hpp"

using namespace hpg;

namespace {

std::string fe_str_bracket(const FE& v) {
    if (v.is_rational()) return to_string(v.to_rat());
    auto vec = v.constant_vec();
    std::string out = "[";
    for (size_t i = 0; i < vec.size(); ++i) {
        if (i) out += ",";
        out += to_string(vec[i]);
    }
    return out + "]";
}

std::string coeff_list(const Poly& p) {
    std::string out;
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) out += ", ";
        out += fe_str_bracket(p.coeff(i));
    }
    return out.empty() ? "0" : out;
}

std::string theta_string(const RadicalExpr& theta) {
    std::ostringstream os;
    bool first = true;
    if (!theta.constant.is_one()) {
        os << "(" << theta.constant.str() << ")";
        first = false;
    }
    for (auto& [base, e] : theta.factors) {
        if (!first) os << "*";
        os << "(" << base.str() << ")^(" << e.str() << ")";
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

struct EmitSpec {
    std::string id, klass;
    NumberFieldPtr nf = NumberField::rationals();
    std::string gen_name;
    RatFunc phi;
    std::string theta;  // expression text
    std::string tilde, params;  // "A ; B ; C"
    std::vector<std::string> symbols;
    std::string samples;
    std::vector<std::string> compositions;
    std::optional<bool> coxeter;
    std::string note;  // comment above the entry
};

std::ostringstream out;

// led expressions from parameter expressions, as strings
std::array<std::string, 3> led_strings(const std::string& triple) {
    auto semi1 = triple.find(';');
    auto semi2 = triple.find(';', semi1 + 1);
    std::string A = triple.substr(0, semi1), B = triple.substr(semi1 + 1, semi2 - semi1 - 1),
                C = triple.substr(semi2 + 1);
    auto trimmed = [](std::string s) {
        size_t a = s.find_first_not_of(' ');
        size_t b = s.find_last_not_of(' ');
        return s.substr(a, b - a + 1);
    };
    A = trimmed(A);
    B = trimmed(B);
    C = trimmed(C);
    return {"1-(" + C + ")", "(" + C + ")-(" + A + ")-(" + B + ")", "(" + B + ")-(" + A + ")"};
}

void emit(const EmitSpec& s) {
    if (!s.note.empty()) out << "# " << s.note << "\n";
    out << "entry " << s.id << "\n";
    out << "class " << s.klass << "\n";
    if (!s.nf->is_q()) {
        out << "field " << s.nf->generator() << " [";
        for (size_t i = 0; i < s.nf->min_poly().size(); ++i)
            out << (i ? "," : "") << to_string(s.nf->min_poly()[i]);
        out << "]\n";
    }
    out << "degree " << s.phi.map_degree() << "\n";
    if (!s.symbols.empty()) {
        out << "symbols ";
        for (size_t i = 0; i < s.symbols.size(); ++i) out << (i ? ", " : "") << s.symbols[i];
        out << "\n";
        out << "samples " << s.samples << "\n";
    }
    auto below = led_strings(s.params);
    auto above = led_strings(s.tilde);
    out << "below " << below[0] << " ; " << below[1] << " ; " << below[2] << "\n";
    out << "above " << above[0] << " ; " << above[1] << " ; " << above[2] << "\n";
    auto rep = analyze_covering(s.phi);
    if (rep.hurwitz_defect != 0) {
        std::cerr << s.id << ": branching outside the marked fibers\n";
        exit(1);
    }
    out << "pattern " << rep.pattern.str() << "\n";
    out << "phi num " << coeff_list(s.phi.num()) << "\n";
    out << "phi den " << coeff_list(s.phi.den()) << "\n";
    if (!s.theta.empty() && s.theta != "1") out << "theta " << s.theta << "\n";
    out << "tilde " << s.tilde << "\n";
    out << "params " << s.params << "\n";
    for (auto& c : s.compositions) out << "composition " << c << "\n";
    if (s.coxeter) out << "coxeter " << (*s.coxeter ? "yes" : "no") << "\n";
    out << "end\n\n";
}

// parse a phi expression over a field
RatFunc rf(const std::string& text, const FieldPtr& f, const std::string& gen = "") {
    SymbolEnv env;
    if (!gen.empty()) env[gen] = FE::generator(f);
    return eval_ratfunc(parse_expr(text), f, env);
}

// Move the three relevant singular points of (phi, below) to 0, 1, infinity.
// Keeps x = 0 above z = 0. Returns the adjusted covering.
RatFunc normalize_marked(const RatFunc& phi, const HpgParams& below) {
    const FieldPtr& f = phi.field();
    FE zero = FE::of(f, 0), one = FE::of(f, 1);
    std::array<FE, 3> led = {one - below.c, below.c - below.a - below.b,
                             below.b - below.a};
    int d = phi.map_degree();
    struct Pt {
        std::optional<FE> loc;
        int fiber;
    };
    std::vector<Pt> sing;
    auto scan = [&](const Poly& p, int fiber) {
        if (!p.is_zero() && p.degree() > 0)
            for (auto& [fac, m] : squarefree_decompose(p)) {
                FE v = led[fiber] * (long)m;
                if (v == one || v == -one) continue;
                for (auto& r : field_roots(fac)) sing.push_back({r, fiber});
                if ((int)field_roots(fac).size() != fac.degree()) {
                    std::cerr << "irrational singular point\n";
                    exit(1);
                }
            }
        int at_inf = d - (p.is_zero() ? 0 : p.degree());
        FE vinf = led[fiber] * (long)at_inf;
        if (at_inf > 0 && !(vinf == one) && !(vinf == -one))
            sing.push_back({std::nullopt, fiber});
    };
    scan(phi.num(), 0);
    scan(phi.num() - phi.den(), 1);
    scan(phi.den(), 2);
    if (sing.size() != 3) {
        std::cerr << "expected 3 singular points, found " << sing.size() << "\n";
        exit(1);
    }
    // x=0 gets a singular point above z=0
    std::vector<int> zero_fiber;
    for (int i = 0; i < 3; ++i)
        if (sing[i].fiber == 0) zero_fiber.push_back(i);
    for (int zi : zero_fiber) {
        std::vector<int> rest;
        for (int i = 0; i < 3; ++i)
            if (i != zi) rest.push_back(i);
        for (int flip = 0; flip < 2; ++flip) {
            auto p1 = sing[rest[flip]].loc, p2 = sing[rest[1 - flip]].loc;
            try {
                Moebius m = Moebius::through(
                    f, {std::optional<FE>(zero), std::optional<FE>(one), std::nullopt},
                    {sing[zi].loc, p1, p2});
                RatFunc cand = moebius_act(m, phi, MoebiusSide::Source);
                return cand;
            } catch (const Error&) {
                continue;
            }
        }
    }
    std::cerr << "no usable marked normalization\n";
    exit(1);
}

// derive + emit a parameter-free entry
void emit_derived(const std::string& id, const std::string& klass, const RatFunc& phi0,
                  const std::string& params_text, const FieldPtr& f, NumberFieldPtr nf,
                  const std::string& gen, std::vector<std::string> compositions = {},
                  std::optional<bool> coxeter = std::nullopt, const std::string& note = "",
                  bool prenormalized = false) {
    SymbolEnv env;
    if (!gen.empty()) env[gen] = FE::generator(f);
    auto semi1 = params_text.find(';');
    auto semi2 = params_text.find(';', semi1 + 1);
    HpgParams below{eval_scalar(parse_expr(params_text.substr(0, semi1)), f, env),
                    eval_scalar(parse_expr(params_text.substr(semi1 + 1, semi2 - semi1 - 1)), f, env),
                    eval_scalar(parse_expr(params_text.substr(semi2 + 1)), f, env)};
    RatFunc phi = prenormalized ? phi0 : normalize_marked(phi0, below);
    auto id2 = derive_two_term(phi, below);
    if (!id2) {
        std::cerr << id << ": derivation failed\n";
        exit(1);
    }
    EmitSpec s;
    s.id = id;
    s.klass = klass;
    s.nf = nf;
    s.gen_name = gen;
    s.phi = phi;
    s.theta = theta_string(id2->theta);
    s.params = params_text;
    s.tilde = id2->tilde.a.str() + " ; " + id2->tilde.b.str() + " ; " + id2->tilde.c.str();
    s.compositions = compositions;
    s.coxeter = coxeter;
    s.note = note;
    emit(s);
}

}  // namespace

int main() {
    auto q = Field::q();
    auto nfw = NumberField::make("w", {Rat(1), Rat(1), Rat(1)});
    auto nfi = NumberField::make("i", {Rat(1), Rat(0), Rat(1)});
    auto nfxi = NumberField::make("xi", {Rat(2), Rat(1), Rat(1)});
    auto nfbt = NumberField::make("bt", {Rat(2), Rat(0), Rat(1)});
    auto nfrho = NumberField::make("rho", {Rat(15), Rat(0), Rat(1)});
    auto nfr2 = NumberField::make("r2", {Rat(-2), Rat(0), Rat(1)});
    auto fw = Field::of(nfw);
    auto fi = Field::of(nfi);
    auto fxi = Field::of(nfxi);
    auto fbt = Field::of(nfbt);
    auto frho = Field::of(nfrho);
    auto fr2 = Field::of(nfr2);

    std::string cls_samples = "a: 1/5, 3/7, -2/9 ; b: 1/3, 2/5, 5/7";
    std::string one_sample = "a: 1/5, 3/7, -2/9";

    out << "# Catalog of explicit pull-back transformations between Gauss\n";
    out << "# hypergeometric equations: coverings, radical prefactors and\n";
    out << "# parameter maps, one entry per transformation. Exponent and\n";
    out << "# parameter entries are expressions in the declared symbols;\n";
    out << "# polynomial coefficients are rationals or bracketed vectors over\n";
    out << "# the declared field generator, lowest degree first.\n\n";

    // ---------------------------------------------------------- classical
    {
        EmitSpec s;
        s.id = "flinear1";
        s.klass = "fractional-linear";
        s.phi = rf("x/(x-1)", q);
        s.theta = "(1-x)^(-a)";
        s.tilde = "a ; b ; c";
        s.params = "a ; c-b ; c";
        s.symbols = {"a", "b", "c"};
        s.samples = "a: 1/5, 3/7, -2/9 ; b: 1/3, 2/5, 5/7 ; c: 5/7, 9/4, 3/5";
        s.note = "Pfaff transformation x -> x/(x-1)";
        emit(s);
        s.id = "flinear2";
        s.theta = "(1-x)^(-b)";
        s.params = "c-a ; b ; c";
        s.note = "companion Pfaff transformation";
        emit(s);
        s.id = "flinear3";
        s.phi = rf("x", q);
        s.theta = "(1-x)^(c-a-b)";
        s.params = "c-a ; c-b ; c";
        s.note = "Euler transformation";
        emit(s);
    }
    {
        EmitSpec s;
        s.id = "quadr1";
        s.klass = "quadratic";
        s.phi = rf("4*x*(1-x)", q);
        s.theta = "";
        s.tilde = "a ; b ; (a+b+1)/2";
        s.params = "a/2 ; b/2 ; (a+b+1)/2";
        s.symbols = {"a", "b"};
        s.samples = cls_samples;
        s.note = "classical quadratic transformation, argument 4x(1-x)";
        emit(s);
        s.id = "quadr2";
        s.phi = rf("x^2/(2-x)^2", q);
        s.theta = "(1-x/2)^(-a)";
        s.tilde = "a ; b ; 2*b";
        s.params = "a/2 ; (a+1)/2 ; b+1/2";
        s.note = "classical quadratic transformation, argument x^2/(2-x)^2";
        emit(s);
    }
    {
        EmitSpec s;
        s.id = "cubic19";
        s.klass = "cubic";
        s.phi = rf("27*x^2*(1-x)/(4-3*x)^3", q);
        s.theta = "(1-3*x/4)^(-a)";
        s.tilde = "a ; a+1/2 ; (4*a+2)/3";
        s.params = "a/3 ; (a+1)/3 ; (4*a+5)/6";
        s.symbols = {"a"};
        s.samples = one_sample;
        s.note = "Goursat cubic, argument 27x^2(1-x)/(4-3x)^3";
        emit(s);
        s.id = "fcomp6a";
        s.phi = rf("27*x*(1-x)^2/(1+3*x)^3", q);
        s.theta = "(1+3*x)^(-a)";
        s.tilde = "a ; a+1/2 ; (4*a+5)/6";
        s.note = "Goursat cubic, argument 27x(1-x)^2/(1+3x)^3";
        emit(s);
        s.id = "fcomp6b";
        s.phi = rf("x*(9-x)^2/(3+x)^3", q);
        s.theta = "(1+x/3)^(-a)";
        s.tilde = "a ; (2*a+1)/6 ; 1/2";
        s.params = "a/3 ; (a+1)/3 ; 1/2";
        s.note = "Goursat cubic, argument x(9-x)^2/(3+x)^3";
        emit(s);
    }
    {
        EmitSpec s;
        s.id = "cubic3";
        s.klass = "cubic";
        s.nf = nfw;
        auto phi = rf("3*(2*w+1)*x*(x-1)/(x+w)^3", fw, "w");
        s.phi = phi;
        s.theta = "(1-(1+w)*x)^(-a)";
        s.tilde = "a ; (a+1)/3 ; (2*a+2)/3";
        s.params = "a/3 ; (a+1)/3 ; (2*a+2)/3";
        s.symbols = {"a"};
        s.samples = one_sample;
        s.note = "cubic with all three upstairs points equal; w^2+w+1=0";
        emit(s);
    }
    {
        EmitSpec s;
        s.id = "quart24";
        s.klass = "quartic";
        s.phi = rf("64*x^3*(1-x)/(9-8*x)^3", q);
        s.theta = "(1-8*x/9)^(-a)";
        s.tilde = "4*a/3 ; (4*a+1)/3 ; (4*a+1)/2";
        s.params = "a/3 ; (a+1)/3 ; (4*a+5)/6";
        s.symbols = {"a"};
        s.samples = one_sample;
        s.note = "indecomposable quartic, argument 64x^3(1-x)/(9-8x)^3";
        emit(s);
        s.id = "quart25";
        s.phi = rf("64*x*(1-x)^3/(1+8*x)^3", q);
        s.theta = "(1+8*x)^(-a)";
        s.tilde = "4*a/3 ; (4*a+1)/3 ; (4*a+5)/6";
        s.note = "indecomposable quartic, argument 64x(1-x)^3/(1+8x)^3";
        emit(s);
        s.id = "quart26";
        s.phi = rf("-x*(8+x)^3/(64*(1-x)^3)", q);
        s.theta = "(1-x)^(-a)";
        s.tilde = "4*a/3 ; (4*a+1)/6 ; 2/3";
        s.params = "a/3 ; (1-2*a)/6 ; 2/3";
        s.note = "indecomposable quartic, argument -x(8+x)^3/(64(1-x)^3)";
        emit(s);
    }
    {
        EmitSpec s;
        s.id = "quartic-2x2";
        s.klass = "quartic";
        s.phi = rf("16*x*(x-1)/(2*x-1)^4", q);
        s.theta = "(1-2*x)^(2*a-1/2)";
        s.tilde = "1/2-2*a ; 1/2 ; 1-a";
        s.params = "1/8-a/2 ; 3/8-a/2 ; 1-a";
        s.symbols = {"a"};
        s.samples = one_sample;
        s.compositions = {"quadr1, quadr1"};
        s.note = "composite quartic through two quadratic steps";
        emit(s);
    }
    {
        EmitSpec s;
        s.id = "trd6";
        s.klass = "sextic";
        s.phi = rf("27*x^2*(x-1)^2/(4*(x^2-x+1)^3)", q);
        s.theta = "(1-x+x^2)^(-a)";
        s.tilde = "2*a ; (2*a+1)/3 ; (4*a+2)/3";
        s.params = "a/3 ; (a+1)/3 ; (4*a+5)/6";
        s.symbols = {"a"};
        s.samples = one_sample;
        s.compositions = {"fcomp6a, quadr2", "quadr1, cubic3"};
        s.note = "degree six covering with two distinct decompositions";
        emit(s);
    }

    // ------------------------------------------------------------- cyclic
    for (int d : {2, 3, 4}) {
        auto cyc = cyclic_covering(d, q);
        EmitSpec s;
        s.id = "cyclic-d" + std::to_string(d);
        s.klass = "cyclic";
        s.phi = cyc.covering;
        std::ostringstream th;
        th << "(" << cyc.phi_tail.str() << ")/" << d;
        s.theta = th.str();
        s.tilde = "1+" + std::to_string(d) + "*a ; 1 ; 2";
        s.params = "1+a ; 1 ; 2";
        s.symbols = {"a"};
        s.samples = one_sample;
        s.note = "cyclic family z -> x phi_{d-1}(x), d = " + std::to_string(d);
        emit(s);
    }

    // --------------------------------------------------------------- pade
    {
        auto p = pade_covering(2, 1, 1, 1);
        EmitSpec s;
        s.id = "pade-2-1-1-1";
        s.klass = "pade";
        s.phi = p.covering;
        s.theta = "4/(4-3*x)";
        s.tilde = "3/2 ; 2 ; 4";
        s.params = "1/2 ; 1 ; 2";
        s.note = "Klein pull-back from the Pade pair (4-x, 4-3x) of sqrt(1-x)";
        emit(s);
    }
    {
        auto p = pade_covering(3, 1, 1, 1);
        emit_derived("pade-3-1-1-1", "pade", p.covering, "2/3 ; 1 ; 2", q,
                     NumberField::rationals(), "", {}, std::nullopt,
                     "Klein pull-back from the Pade pair of (1-x)^(1/3)", true);
    }

    // ------------------------------------------------------------ dihedral
    for (int d : {2, 3, 4, 5}) {
        auto th = dihedral_thetas(d, q);
        EmitSpec s;
        s.id = "gdihtr-d" + std::to_string(d);
        s.klass = "dihedral";
        s.phi = th.covering;
        s.theta = "(" + th.theta1.str() + ")^(-a)";
        s.tilde = std::to_string(d) + "*a/2 ; (" + std::to_string(d) + "*a+1)/2 ; 1/2";
        s.params = "a/2 ; (a+1)/2 ; 1/2";
        s.symbols = {"a"};
        s.samples = one_sample;
        s.note = "dihedral self-transformation from (1+sqrt x)^d, d = " + std::to_string(d);
        emit(s);
    }
    for (int k : {2, 3}) {
        auto g = gfdih_covering(k, 1, 1, 0);
        FE scale = g.theta1.constant_term();
        Poly theta3 = g.theta1 * scale.inv();
        EmitSpec s;
        s.id = "theta34-k" + std::to_string(k);
        s.klass = "dihedral";
        s.phi = g.covering;
        s.theta = "(" + theta3.str() + ")^(1/" + std::to_string(k) + ")";
        std::string kk = std::to_string(k);
        s.tilde = "-1/(2*" + kk + ") ; -1/2-1/(2*" + kk + ") ; -1/2";
        s.params = "-1/(2*" + kk + ") ; 1/2-1/(2*" + kk + ") ; 1/2";
        s.note = "dihedral Klein covering from (1+sqrt x)(1-sqrt x/k)^k, k = " + kk;
        emit(s);
    }
    {
        auto g = gfdih_covering(3, 2, 1, 1);
        emit_derived("gfdih-3-2-1-1", "dihedral", g.covering, "-1/6 ; 1/3 ; 1/2", q,
                     NumberField::rationals(), "", {}, std::nullopt,
                     "dihedral Klein covering, (k,l,m,n) = (3,2,1,1)");
    }

    // dihedral closed forms (evaluation entries)
    out << "# closed dihedral evaluation through the square substitution\n";
    out << "entry dihedr1\nclass dihedral\ndegree 2\nsymbols a\nsamples " << one_sample << "\n";
    out << "below 1-(a+1) ; (a+1)-(a/2)-((a+1)/2) ; ((a+1)/2)-(a/2)\n";
    out << "pattern 1+1=2=2\nphi num 0, 2, -1\nphi den 1\n";
    out << "params a/2 ; (a+1)/2 ; a+1\nrhs (1-x/2)^(-a)\nend\n\n";
    for (int k : {2, 3}) {
        std::string kk = std::to_string(k);
        out << "# odd dihedral evaluation at z = (1-t)^2, k = " << k << "\n";
        out << "entry diha-closed-k" << k << "\nclass dihedral\ndegree 2\n";
        out << "below 1-(1-1/" << kk << ") ; 1/" << kk << " ; 1/2\n";
        out << "pattern 1+1=2=2\nphi num 0, 2, -1\nphi den 1\n";
        out << "params -1/(2*" << kk << ") ; -1/2-1/(2*" << kk << ") ; 1-1/" << kk << "\n";
        out << "rhs (1+x/" << (k - 1) << ")*(1-x/2)^(1/" << kk << ")\nend\n\n";
    }

    // ------------------------------------------------------------- darboux
    struct Darboux {
        const char* id;
        const char* phi;
        const char* params;
        const char* rhs;
    };
    std::vector<Darboux> darboux = {
        {"darboux-tetra1", "x*(x+4)^3/(4*(2*x-1)^3)", "1/4 ; -1/12 ; 2/3", "(1-2*x)^(-1/4)"},
        {"darboux-tetra2", "x*(x+2)^3/(2*x+1)^3", "1/2 ; -1/6 ; 2/3", "(1+2*x)^(-1/2)"},
        {"darboux-octa1", "108*x*(x-1)^4/(x^2+14*x+1)^3", "7/24 ; -1/24 ; 3/4",
         "(1+14*x+x^2)^(-1/8)"},
        {"darboux-octa2", "27*x*(x+1)^4/(2*(x^2+4*x+1)^3)", "1/6 ; -1/6 ; 1/4",
         "(1+2*x)^(1/4)*(1+4*x+x^2)^(-1/2)"},
        {"darboux-icosa1",
         "1728*x*(x^2-11*x-1)^5/(x^4+228*x^3+494*x^2-228*x+1)^3", "13/60 ; -7/60 ; 3/5",
         "(1-7*x)*(1-228*x+494*x^2+228*x^3+x^4)^(-7/20)"},
        {"darboux-icosa2", "64*x*(x^2-x-1)^5/((x^2-1)*(x^2+4*x-1)^5)", "7/20 ; -1/20 ; 4/5",
         "(1+x)^(7/20)*(1-x)^(-1/20)*(1-4*x-x^2)^(-1/4)"},
    };
    for (auto& d : darboux) {
        RatFunc phi = rf(d.phi, q);
        auto rep = analyze_covering(phi);
        out << "# radical evaluation of an algebraic hypergeometric function\n";
        out << "entry " << d.id << "\nclass darboux\ndegree " << phi.map_degree() << "\n";
        auto below = led_strings(d.params);
        out << "below " << below[0] << " ; " << below[1] << " ; " << below[2] << "\n";
        out << "pattern " << rep.pattern.str() << "\n";
        out << "phi num " << coeff_list(phi.num()) << "\n";
        out << "phi den " << coeff_list(phi.den()) << "\n";
        out << "params " << d.params << "\nrhs " << d.rhs << "\nend\n\n";
    }
    // the two genus-1 evaluations
    out << "# genus-1 radical evaluation; xi^2 = x(1+x)(1+16x), expanded at x = t^2\n"
        << "entry darboux-icosa-xi1\nclass darboux\n"
        << "below 1/5 ; 1/2 ; 1/3\n"
        << "ramify skip genus-1 covering, certified by series only\n"
        << "subst t2\nxi 0, 1, 17, 16\n"
        << "params 8/15 ; -1/15 ; 4/5\n"
        << "phiconst 54\n"
        << "phifac 3 | 0, 5 | 1\n"
        << "phifac 5 | 1, 6 | -2\n"
        << "phifac -1 | -1, 0, 16\n"
        << "phifac -2 | 0, -5 | 1\n"
        << "phifac -5 | 1, -14 | -2\n"
        << "rhsfac 8/15 | 1, 4\n"
        << "rhsfac 1/6 | 0, 5 | 1\n"
        << "rhsfac 1/15 | 0, 1\n"
        << "rhsfac -1/3 | 1, -14 | -2\n"
        << "rhsfac -3/10 | 0, -3 | 1\n"
        << "end\n\n";
    out << "# genus-1 radical evaluation; xi^2 = x(1+x-x^2), expanded at x = t^2\n"
        << "entry darboux-icosa-xi2\nclass darboux\n"
        << "below 1/5 ; 1/2 ; 1/3\n"
        << "ramify skip genus-1 covering, certified by series only\n"
        << "subst t2\nxi 0, 1, 1, -1\n"
        << "params 7/10 ; -1/10 ; 4/5\n"
        << "phiconst 16\n"
        << "phifac 1 | 0 | 1\n"
        << "phifac 2 | 1, 1, -1\n"
        << "phifac 2 | 1 | -1\n"
        << "phifac -1 | 1, 2 | 1\n"
        << "phifac -5 | 1, -2 | 1\n"
        << "rhsfac 1/15 | 1, 2 | -1\n"
        << "rhsfac 3/5 | 1 | -1\n"
        << "rhsfac -7/30 | 1, 2 | 1\n"
        << "rhsfac -1/2 | 1, -2 | 1\n"
        << "end\n\n";

    // ------------------------------------------------------ klein coverings
    {
        EmitSpec s;
        s.id = "klein-t1";
        s.klass = "klein-standard";
        s.phi = rf("-x^2*(4*x-5)^3/(5*x-4)^3", q);
        s.theta = "(1-5*x/4)^(1/4)";
        s.tilde = "1/4 ; -5/12 ; 1/3";
        s.params = "1/4 ; -1/12 ; 2/3";
        s.note = "Klein pull-back to the tetrahedral standard equation, degree 5";
        emit(s);
        s.id = "klein-t2";
        s.phi = rf("-x*(x^2-42*x-7)^3/(7*x^2+42*x-1)^3", q);
        s.theta = "(1-42*x-7*x^2)^(1/4)";
        s.tilde = "-1/4 ; -7/12 ; 2/3";
        s.note = "Klein pull-back to the tetrahedral standard equation, degree 7";
        emit(s);
        s.id = "klein-t9";
        s.phi = rf("-108*x^4*(x-1)^4*(27*x^2-27*x+7)^3/(189*x^4-378*x^3+301*x^2-112*x+16)^3", q);
        s.theta = "((189*x^4-378*x^3+301*x^2-112*x+16)/16)^(1/4)";
        s.tilde = "-1/2 ; -7/6 ; -1/3";
        s.note = "Klein pull-back for the (2/3,4/3,4/3) tetrahedral case, degree 14";
        emit(s);
    }
    struct Klein {
        const char* id;
        const char* phi;
        const char* triple;  // comment
    };
    std::vector<Klein> kleins = {
        {"klein-t3", "-x*(256*x^2-448*x+189)^3/(27*(28*x-27)^3)", "(1/2,1/3,4/3)"},
        {"klein-t4", "19683*x^2*(4*x-1)^3/(256*x^3-192*x^2+21*x-4)^3", "(1/2,2/3,4/3)"},
        {"klein-t5", "-19683*x*(128*x-125)^3/(16384*x^3-30720*x^2+14880*x-625)^3",
         "(1/2,1/3,5/3)"},
        {"klein-t6", "-729*x*(5*x^2+14*x+125)^3/(4*x^3+15*x^2-690*x-625)^3", "(3/2,1/3,2/3)"},
        {"klein-t7", "4*x*(256*x^3-640*x^2+520*x-135)^3/(27*(x-1)^2*(32*x-27)^3)",
         "(1/3,2/3,5/3)"},
        {"klein-t8", "-x^2*(x-1)^2*(16*x^2-16*x+5)^3/(4*(5*x^2-5*x+1)^3)", "(2/3,2/3,4/3)"},
    };
    for (auto& k : kleins) {
        emit_derived(k.id, "klein-standard", rf(k.phi, q), "1/4 ; -1/12 ; 2/3", q,
                     NumberField::rationals(), "", {}, std::nullopt,
                     std::string("Klein pull-back, transformed differences ") + k.triple);
    }
    emit_derived("klein-i1", "klein-standard",
                 rf("x*(102400*x^2-11264*x-11)^5/(180224000*x^3+4325376*x^2-21252*x+1)^3", q),
                 "-1/60 ; 19/60 ; 4/5", q, NumberField::rationals(), "", {}, std::nullopt,
                 "Klein pull-back to the icosahedral standard equation, degree 11");
    emit_derived("klein-i2", "klein-standard",
                 rf("108*x*(1-x)*(512*x^2-512*x+3)^5/"
                    "(1048576*x^6-3145728*x^5+3244032*x^4-1245184*x^3+94848*x^2+3456*x+1)^3",
                    q),
                 "-1/60 ; 19/60 ; 4/5", q, NumberField::rationals(), "", {}, std::nullopt,
                 "Klein pull-back to the icosahedral standard equation, degree 18");
    {
        EmitSpec s;
        s.id = "icos2tetra";
        s.klass = "klein-standard";
        s.nf = nfrho;
        s.phi = rf("50*(5+3*rho)*x*(1024*x-781-171*rho)^3/(128*x+7+33*rho)^5", frho, "rho");
        s.theta = "(1+(7-33*rho)/128*x)^(1/12)";
        s.tilde = "1/4 ; -1/12 ; 2/3";
        s.params = "11/60 ; -1/60 ; 2/3";
        s.note = "icosahedral to tetrahedral standard equation; rho^2 = -15";
        emit(s);
    }

    // ------------------------------------------------------------ elliptic
    {
        EmitSpec s;
        s.klass = "elliptic-E1";
        s.tilde = "1/2 ; 1/4 ; 5/4";
        s.params = "1/2 ; 1/4 ; 5/4";
        s.id = "e1-1pi";
        s.phi = rf("-4*x/(x-1)^2", q);
        s.theta = "(1-x)^(-1/2)";
        s.note = "self-transformation from the degree-2 endomorphism (label 1+i)";
        emit(s);
        s.id = "e1-2";
        s.phi = rf("16*x*(x-1)^2/(x+1)^4", q);
        s.theta = "(1-x)^(1/2)*(1+x)^(-1)";
        s.note = "self-transformation from doubling (label 2)";
        emit(s);
        s.id = "e1-1p2i";
        s.nf = nfi;
        s.phi = rf("x*(x-1-2*i)^4/((1+2*i)*x-1)^4", fi, "i");
        s.theta = "(1-x/(1+2*i))*(1-(1+2*i)*x)^(-1)";
        s.note = "self-transformation of degree 5 (label 1+2i)";
        emit(s);
    }
    {
        EmitSpec s;
        s.klass = "elliptic-E2";
        s.tilde = "1/2 ; 1/6 ; 7/6";
        s.params = "1/2 ; 1/6 ; 7/6";
        s.id = "e2-1mw";
        s.phi = rf("27*x/(4*x-1)^3", q);
        s.theta = "(1-4*x)^(-1/2)";
        s.note = "self-transformation of degree 3 (label 1-w)";
        emit(s);
        s.id = "e2-3";
        s.phi = rf("-729*x*(4*x-1)^6/(64*x^3-48*x^2-96*x-1)^3", q);
        s.theta = "(1-4*x)*(1+96*x+48*x^2-64*x^3)^(-1/2)";
        s.note = "self-transformation of degree 9 (label 3)";
        emit(s);
        s.id = "e2-3pw";
        s.nf = nfw;
        s.phi = rf("x*(4*x-3*w-1)^6/((48*w+16)*x^2-(44+48*w)*x+1)^3", fw, "w");
        s.theta = "(1-4*x/(3*w+1))*(1-(44+48*w)*x+(48*w+16)*x^2)^(-1/2)";
        s.note = "self-transformation of degree 7 (label 3+w)";
        emit(s);
    }
    {
        EmitSpec s;
        s.klass = "elliptic-E3";
        s.tilde = "1/3 ; 2/3 ; 4/3";
        s.params = "1/3 ; 2/3 ; 4/3";
        s.id = "e3-2";
        s.phi = rf("x*(x-2)^3/(1-2*x)^3", q);
        s.theta = "(1-x/2)*(1-2*x)^(-1)";
        s.note = "self-transformation of degree 4 (label 2)";
        emit(s);
        s.id = "e3-3";
        s.phi = rf("27*x*(1-x)*(x^2-x+1)^3/(x^3-6*x^2+3*x+1)^3", q);
        s.theta = "(1-x+x^2)*(1-x)^(1/3)*(1+3*x-6*x^2+x^3)^(-1)";
        s.note = "self-transformation of degree 9 (label 3)";
        emit(s);
        s.id = "e3-3pw";
        s.nf = nfw;
        s.phi = rf("x*(x^2+(3*w+2)*x-3*w-2)^3/(1+(3*w+2)*x-(3*w+2)*x^2)^3", fw, "w");
        s.theta = "(1-x-x^2/(3*w+2))*(1+(3*w+2)*x-(3*w+2)*x^2)^(-1)";
        s.note = "self-transformation of degree 7 (label 3+w)";
        emit(s);
    }

    // ---------------------------------------------------------- hyperbolic
    {
        EmitSpec s;
        s.klass = "hyperbolic";
        s.id = "hyp-phi6";
        s.nf = nfi;
        s.phi = rf("4*i*x*(x-1)*(4*x-2-11*i)^4/(8*x-4+3*i)^5", fi, "i");
        s.theta = "(1-8*(4+3*i)/25*x)^(-1/8)";
        s.tilde = "3/20 ; 7/20 ; 3/4";
        s.params = "1/40 ; 9/40 ; 3/4";
        s.coxeter = false;
        s.note = "(1/2,1/4,1/5) <- (1/4,1/4,1/5), degree 6";
        emit(s);
        s.id = "hyp-phi8";
        s.nf = nfw;
        s.phi = rf("x*(x-1)*(27*x^2-(723+1392*w)*x-496+696*w)^3/(64*((6*w+3)*x-8-3*w)^7)", fw, "w");
        s.theta = "(1-(33+39*w)/49*x)^(-1/12)";
        s.tilde = "2/21 ; 5/21 ; 2/3";
        s.params = "1/84 ; 13/84 ; 2/3";
        s.coxeter = false;
        s.note = "(1/2,1/3,1/7) <- (1/3,1/3,1/7), degree 8";
        emit(s);
        s.id = "hyp-phi9";
        s.nf = nfxi;
        s.phi = rf("27*x*(x-1)*(49*x-31-13*xi)^7/"
                   "(49*(7203*x^3+(9947*xi-5831)*x^2-(9947*xi+2009)*x+275-87*xi)^3)",
                   fxi, "xi");
        s.theta =
            "(1+7*(10-29*xi)/8*x-343*(50-29*xi)/512*x^2+1029*(362+87*xi)/16384*x^3)^(-1/28)";
        s.tilde = "3/28 ; 17/28 ; 6/7";
        s.params = "1/84 ; 29/84 ; 6/7";
        s.coxeter = false;
        s.note = "(1/2,1/3,1/7) <- (1/2,1/7,1/7), degree 9; xi^2+xi+2=0";
        emit(s);
        s.id = "hyp-phi10";
        s.nf = NumberField::rationals();
        s.phi = rf("-x^2*(x-1)*(49*x-81)^7/(4*(16807*x^3-9261*x^2-13851*x+6561)^3)", q);
        s.theta = "(1-19*x/9-343*x^2/243+16807*x^3/6561)^(-1/28)";
        s.tilde = "5/42 ; 19/42 ; 5/7";
        s.params = "1/84 ; 29/84 ; 6/7";
        s.coxeter = true;
        s.note = "(1/2,1/3,1/7) <- (1/3,1/7,2/7), degree 10";
        emit(s);
        s.id = "hyp-phi10t";
        s.nf = nfbt;
        s.phi = rf("4*x*(x-1)*(8*bt*x+7-4*bt)^8/"
                   "(2048*bt*x^3-3072*bt*x^2-3264*x^2+912*bt*x+3264*x+56*bt-17)^3",
                   fbt, "bt");
        s.theta =
            "(1+16*(4-17*bt)/9*x-64*(167-136*bt)/243*x^2+2048*(112-17*bt)/6561*x^3)^(-1/16)";
        s.tilde = "5/24 ; 13/24 ; 7/8";
        s.params = "1/48 ; 17/48 ; 7/8";
        s.coxeter = false;
        s.note = "(1/2,1/3,1/8) <- (1/3,1/8,1/8), degree 10; bt^2+2=0";
        emit(s);
        s.id = "hyp-phi24";
        s.nf = NumberField::rationals();
        s.phi = rf("1728*x*(x-1)*(x^3-8*x^2+5*x+1)^7/"
                   "((x^2-x+1)^3*(x^6+229*x^5+270*x^4-1695*x^3+1430*x^2-235*x+1)^3)",
                   q);
        s.theta =
            "(1-235*x+1430*x^2-1695*x^3+270*x^4+229*x^5+x^6)^(-1/28)*(1-x+x^2)^(-1/28)";
        s.tilde = "2/7 ; 3/7 ; 6/7";
        s.params = "1/84 ; 29/84 ; 6/7";
        s.coxeter = true;
        s.compositions = {"hyp-phi8, cubic3"};
        s.note = "(1/2,1/3,1/7) <- (1/7,1/7,1/7), degree 24";
        emit(s);
    }
    // composite hyperbolic transformations, assembled from printed stages
    {
        // degree 18 = 2 x 9: phi9 composed with w -> w^2/(2-w)^2
        auto phi9 = rf("27*x*(x-1)*(49*x-31-13*xi)^7/"
                       "(49*(7203*x^3+(9947*xi-5831)*x^2-(9947*xi+2009)*x+275-87*xi)^3)",
                       fxi, "xi");
        RatFunc inner = rf("x^2/(2-x)^2", fxi);
        emit_derived("hyp-18-2x9", "hyperbolic", phi9.compose(inner), "1/84 ; 29/84 ; 6/7", fxi,
                     nfxi, "xi", {"hyp-phi9, quadr1"}, false,
                     "(1/2,1/3,1/7) <- (1/7,1/7,2/7), degree 18, composed 2 x 9");
    }
    {
        // degree 12 = 3 x 4: quart24 at a = 1/12 composed with a cubic power
        auto phiq = rf("64*x^3*(1-x)/(9-8*x)^3", fw);
        RatFunc m = rf("(w*x+1)/((-1-w)*x+1)", fw, "w");  // w^2 = -1-w
        RatFunc inner = m * m * m;
        emit_derived("hyp-12-3x4", "hyperbolic", phiq.compose(inner), "1/36 ; 13/36 ; 8/9", fw,
                     nfw, "w", {"quart24, cubic3"}, false,
                     "(1/2,1/3,1/9) <- (1/9,1/9,1/9), degree 12, composed 3 x 4");
    }
    {
        // degree 12 = 2 x 2 x 3: cubic19 at a = 1/16 under two quadratic steps
        auto phic = rf("27*x^2*(1-x)/(4-3*x)^3", fr2);
        RatFunc qstep = rf("-(2*x-1)^2/(4*x*(1-x))", fr2);
        RatFunc mr = rf("(2-r2)/4+(r2/2)*x", fr2, "r2");
        RatFunc inner = qstep.compose(mr);
        RatFunc total = phic.compose((inner * inner));
        emit_derived("hyp-12-2x2x3", "hyperbolic", total, "1/48 ; 17/48 ; 7/8", fr2, nfr2, "r2",
                     {"cubic19, quadr1, quadr1"}, true,
                     "(1/2,1/3,1/8) <- (1/4,1/8,1/8), degree 12, composed 2 x 2 x 3; r2^2 = 2",
                     true);
    }
    {
        // the rational-function evaluation of the trivial-monodromy pull-back
        RatFunc phi = rf("-4*x^3*(x-1)^2*(x+2)/(3*x-2)^2", q);
        auto rep = analyze_covering(phi);
        out << "# pull-back of a two-valued function to a rational function\n";
        out << "entry ratff\nclass cyclic\ndegree " << phi.map_degree() << "\n";
        out << "below 1-2 ; 2-(1/2)-1 ; 1-1/2\n";
        out << "pattern " << rep.pattern.str() << "\n";
        out << "phi num " << coeff_list(phi.num()) << "\n";
        out << "phi den " << coeff_list(phi.den()) << "\n";
        out << "params 1/2 ; 1 ; 2\n";
        out << "rhs (2-3*x)/((1-x)^2*(x+2))\nend\n\n";
    }

    std::cout << out.str();
    return 0;
}
