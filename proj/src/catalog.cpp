#include "hpg/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "hpg/solver.hpp"

namespace hpg {

FieldPtr CatalogEntry::base_field() const { return Field::of(nf); }

FieldPtr CatalogEntry::working_field() const {
    if (symbols.empty()) return Field::of(nf);
    return Field::with_param(nf, symbols[0]);
}

const std::vector<Rat>& sample_pool() {
    static const std::vector<Rat> pool = {Rat(1, 5),  Rat(3, 7),  Rat(-2, 9), Rat(2, 11),
                                          Rat(-3, 13), Rat(5, 7), Rat(1, 3),  Rat(2, 5),
                                          Rat(4, 9),  Rat(-5, 11), Rat(7, 5), Rat(-1, 6)};
    return pool;
}

// ------------------------------------------------------------------- parsing

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else
            cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& msg) {
    fail(ErrorKind::ParseError, name + ":" + std::to_string(line) + ": " + msg);
}

// Coefficient token: rational "27/4" or a bracketed vector "[-496,696]" over
// the field generator.
FE parse_coeff(const std::string& tok0, const FieldPtr& f, const std::string& name, int line) {
    std::string tok = trim(tok0);
    if (tok.empty()) parse_fail(name, line, "empty coefficient");
    if (tok[0] == '[') {
        if (tok.back() != ']') parse_fail(name, line, "unterminated coefficient vector");
        auto parts = split(tok.substr(1, tok.size() - 2), ',');
        NumberField::Vec v = f->number_field()->zero();
        if (parts.size() > v.size()) parse_fail(name, line, "coefficient vector too long");
        for (size_t i = 0; i < parts.size(); ++i) v[i] = parse_rat(trim(parts[i]));
        return FE::from_vec(f, v);
    }
    return FE::of(f, parse_rat(tok));
}

Poly parse_coeff_list(const std::string& body, const FieldPtr& f, const std::string& name,
                      int line) {
    // split on commas at bracket depth 0
    std::vector<std::string> toks;
    std::string cur;
    int depth = 0;
    for (char c : body) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == ',' && depth == 0) {
            toks.push_back(cur);
            cur.clear();
        } else
            cur.push_back(c);
    }
    toks.push_back(cur);
    std::vector<FE> coeffs;
    for (auto& t : toks) coeffs.push_back(parse_coeff(t, f, name, line));
    return Poly(f, coeffs);
}

std::array<Expr, 3> parse_expr_triple(const std::string& body, const std::string& name, int line) {
    auto parts = split(body, ';');
    if (parts.size() != 3) parse_fail(name, line, "expected three ';'-separated expressions");
    return {parse_expr(trim(parts[0])), parse_expr(trim(parts[1])), parse_expr(trim(parts[2]))};
}

}  // namespace

std::vector<CatalogEntry> parse_catalog(const std::string& text, const std::string& name) {
    std::vector<CatalogEntry> out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::optional<CatalogEntry> cur;
    std::string phi_num, phi_den;
    int phi_line = 0;

    auto finish = [&]() {
        if (!cur) return;
        CatalogEntry& e = *cur;
        FieldPtr bf = e.base_field();
        if (!phi_num.empty()) {
            Poly num = parse_coeff_list(phi_num, bf, name, phi_line);
            Poly den = phi_den.empty() ? Poly::constant(bf, 1)
                                       : parse_coeff_list(phi_den, bf, name, phi_line);
            e.phi = RatFunc(num, den);
        }
        if (e.degree == 0 && e.phi) parse_fail(name, e.line, "entry '" + e.id + "' has no degree");
        if (e.phi && e.phi->map_degree() != e.degree)
            parse_fail(name, e.line,
                       "entry '" + e.id + "': declared degree " + std::to_string(e.degree) +
                           " but the covering has map degree " +
                           std::to_string(e.phi->map_degree()));
        for (auto& s : e.symbols)
            if (!e.samples.count(s))
                parse_fail(name, e.line, "entry '" + e.id + "': no samples for symbol " + s);
        out.push_back(e);
        cur.reset();
        phi_num.clear();
        phi_den.clear();
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto sp = line.find(' ');
        std::string key = sp == std::string::npos ? line : line.substr(0, sp);
        std::string body = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
        if (key == "entry") {
            finish();
            cur = CatalogEntry{};
            cur->id = body;
            cur->nf = NumberField::rationals();
            cur->line = lineno;
            auto f = Field::q();
            cur->phi_const = FE::of(f, 1);
            cur->rhs_const = FE::of(f, 1);
            continue;
        }
        if (!cur) parse_fail(name, lineno, "directive outside an entry: " + key);
        CatalogEntry& e = *cur;
        try {
            if (key == "class") {
                e.klass = body;
            } else if (key == "degree") {
                e.degree = (int)parse_rat(body).get_num().get_si();
            } else if (key == "field") {
                auto sp2 = body.find(' ');
                if (sp2 == std::string::npos) parse_fail(name, lineno, "field needs name and minpoly");
                std::string gen = body.substr(0, sp2);
                std::string mp = trim(body.substr(sp2 + 1));
                if (mp.front() != '[' || mp.back() != ']')
                    parse_fail(name, lineno, "minpoly must be a bracketed list");
                std::vector<Rat> coeffs;
                for (auto& t : split(mp.substr(1, mp.size() - 2), ','))
                    coeffs.push_back(parse_rat(trim(t)));
                e.nf = NumberField::make(gen, coeffs);
                FieldPtr f = e.base_field();
                e.phi_const = FE::of(f, 1);
                e.rhs_const = FE::of(f, 1);
            } else if (key == "symbols") {
                for (auto& t : split(body, ',')) e.symbols.push_back(trim(t));
            } else if (key == "samples") {
                // samples a: 1/5, 3/7 ; b: 1/3, 2/5
                for (auto& group : split(body, ';')) {
                    auto colon = group.find(':');
                    if (colon == std::string::npos) parse_fail(name, lineno, "samples need 'sym:'");
                    std::string sym = trim(group.substr(0, colon));
                    std::vector<Rat> vals;
                    for (auto& t : split(group.substr(colon + 1), ','))
                        vals.push_back(parse_rat(trim(t)));
                    e.samples[sym] = vals;
                }
            } else if (key == "below") {
                e.below = parse_expr_triple(body, name, lineno);
            } else if (key == "above") {
                e.above = parse_expr_triple(body, name, lineno);
            } else if (key == "pattern") {
                e.pattern = BranchingPattern::parse(body);
            } else if (key == "ramify") {
                if (body.rfind("skip", 0) == 0)
                    e.ramify_skip = trim(body.substr(4)).empty() ? "skip" : trim(body.substr(4));
                else
                    parse_fail(name, lineno, "unknown ramify directive");
            } else if (key == "phi") {
                auto sp2 = body.find(' ');
                std::string which = body.substr(0, sp2);
                std::string rest = sp2 == std::string::npos ? "" : trim(body.substr(sp2 + 1));
                if (which == "num") {
                    phi_num = rest;
                    phi_line = lineno;
                } else if (which == "den") {
                    phi_den = rest;
                } else
                    parse_fail(name, lineno, "phi needs 'num' or 'den'");
            } else if (key == "theta") {
                e.theta = parse_expr(body);
            } else if (key == "tilde") {
                e.tilde = parse_expr_triple(body, name, lineno);
            } else if (key == "params") {
                e.params = parse_expr_triple(body, name, lineno);
            } else if (key == "rhs") {
                e.rhs = parse_expr(body);
            } else if (key == "subst") {
                if (body == "t2")
                    e.subst_t2 = true;
                else
                    parse_fail(name, lineno, "unknown substitution " + body);
            } else if (key == "xi") {
                e.xi_square = parse_coeff_list(body, e.base_field(), name, lineno);
            } else if (key == "phiconst" || key == "rhsconst") {
                FE v = parse_coeff(body, e.base_field(), name, lineno);
                (key == "phiconst" ? e.phi_const : e.rhs_const) = v;
            } else if (key == "phifac" || key == "rhsfac") {
                // <exponent> | <P coeffs> | <Q coeffs (may be empty)>
                auto parts = split(body, '|');
                if (parts.size() < 2) parse_fail(name, lineno, "factor needs exponent and P part");
                Rat ex = parse_rat(trim(parts[0]));
                FieldPtr bf = e.base_field();
                Poly p = parse_coeff_list(trim(parts[1]), bf, name, lineno);
                Poly q = (parts.size() > 2 && !trim(parts[2]).empty())
                             ? parse_coeff_list(trim(parts[2]), bf, name, lineno)
                             : Poly::zero(bf);
                (key == "phifac" ? e.phi_factors : e.rhs_factors).push_back({p, q, ex});
            } else if (key == "composition") {
                std::vector<std::string> chain;
                for (auto& t : split(body, ',')) chain.push_back(trim(t));
                e.compositions.push_back(chain);
            } else if (key == "coxeter") {
                e.coxeter = (body == "yes");
            } else if (key == "end") {
                finish();
            } else {
                parse_fail(name, lineno, "unknown directive: " + key);
            }
        } catch (const Error& err) {
            if (err.kind() == ErrorKind::ParseError) throw;
            parse_fail(name, lineno, err.what());
        }
    }
    finish();
    return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open catalog file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str(), path);
}

// -------------------------------------------------------------- verification

namespace {

Poly lift_poly(const Poly& p, const FieldPtr& target) {
    std::vector<FE> c;
    for (auto& v : p.coeffs()) c.push_back(v.lift_to(target));
    return Poly(target, c);
}

RatFunc lift_ratfunc(const RatFunc& r, const FieldPtr& target) {
    return RatFunc(lift_poly(r.num(), target), lift_poly(r.den(), target));
}

// Embeds a rational-coefficient object into an extension field.
Poly embed_poly(const Poly& p, const FieldPtr& target) {
    std::vector<FE> c;
    for (auto& v : p.coeffs()) {
        if (!v.is_rational())
            fail(ErrorKind::FieldMismatch, "cannot embed a non-rational coefficient");
        c.push_back(FE::of(target, v.to_rat()));
    }
    return Poly(target, c);
}

RatFunc embed_ratfunc(const RatFunc& r, const FieldPtr& target) {
    return RatFunc(embed_poly(r.num(), target), embed_poly(r.den(), target));
}

// Sample tuples for the entry's symbols: the declared lists, advanced through
// the shared pool when a tuple degenerates.
struct SamplePlan {
    std::vector<std::string> symbols;
    std::vector<std::vector<Rat>> tuples;
};

SamplePlan make_plan(const CatalogEntry& e, const std::map<std::string, std::vector<Rat>>& over) {
    SamplePlan plan;
    plan.symbols = e.symbols;
    size_t count = 0;
    for (auto& s : e.symbols) {
        auto it = over.count(s) ? over.find(s) : e.samples.find(s);
        count = std::max(count, it->second.size());
    }
    if (e.symbols.empty()) {
        plan.tuples.push_back({});
        return plan;
    }
    for (size_t i = 0; i < count; ++i) {
        std::vector<Rat> tuple;
        for (auto& s : e.symbols) {
            const auto& list = over.count(s) ? over.at(s) : e.samples.at(s);
            tuple.push_back(list[i % list.size()]);
        }
        plan.tuples.push_back(tuple);
    }
    return plan;
}

// Environment for expression evaluation over the working field; sampled
// symbols get rational values, the formal one stays symbolic when the field
// carries a parameter.
SymbolEnv make_env(const CatalogEntry& e, const FieldPtr& f, const std::vector<Rat>& tuple,
                   bool formal_first) {
    SymbolEnv env;
    if (!e.nf->is_q()) env[e.nf->generator()] = FE::generator(f);
    for (size_t i = 0; i < e.symbols.size(); ++i) {
        if (i == 0 && formal_first && f->has_param())
            env[e.symbols[i]] = FE::parameter(f);
        else
            env[e.symbols[i]] = FE::of(f, tuple[i]);
    }
    return env;
}

bool invalid_c(const FE& c) {
    if (!c.is_rational()) return false;
    Rat r = c.to_rat();
    return is_integer(r) && r <= 0;
}

HpgParams eval_params(const std::array<Expr, 3>& p, const FieldPtr& f, const SymbolEnv& env) {
    return {eval_scalar(p[0], f, env), eval_scalar(p[1], f, env), eval_scalar(p[2], f, env)};
}

// Valuation-tracking series product for closed forms with fractional factor
// exponents whose total is integral.
struct ValSeries {
    Rat val;      // exact t-valuation contributed by monomial parts
    Series unit;  // unit series (constant term 1)
};

// p(x) as a series in t with x = t^stretch, on the plain integer grid.
Series poly_series_stretch(const Poly& p, int stretch, int order) {
    std::vector<FE> c;
    for (int i = 0; i <= p.degree(); ++i) {
        c.resize((size_t)i * stretch, FE::of(p.field(), 0));
        c.push_back(p[i]);
    }
    return Series(p.field(), 1, order, c);
}

// Series of (p(x) + q(x) xi)(t) / t^v as a unit, v returned; x = t^2 when
// subst_t2, else x = t. xi = t^{w} sqrt(V) as configured.
ValSeries factor_series(const CurveFactor& fac, const CatalogEntry& e, const FieldPtr& f,
                        int order) {
    int stretch = e.subst_t2 ? 2 : 1;
    Series px = poly_series_stretch(embed_poly(fac.p, f), stretch, order);
    Series total = px;
    if (!fac.q.is_zero()) {
        if (!e.xi_square) fail(ErrorKind::InvalidArgument, "xi factor without xi declaration");
        Poly u = embed_poly(*e.xi_square, f);
        // U = x * V with V(0) != 0: xi = t * sqrt(V(t^2)) for x = t^2
        if (!u.coeff(0).is_zero() || u.coeff(1).is_zero() || !e.subst_t2)
            fail(ErrorKind::InvalidArgument, "xi^2 must be x * (unit) with the t^2 substitution");
        std::vector<FE> vc(u.coeffs().begin() + 1, u.coeffs().end());
        Poly v(f, vc);
        FE v0 = v.constant_term();
        Series vs = poly_series_stretch(v * v0.inv(), stretch, order);
        Series sqrt_v = vs.pow_unit(FE::of(f, Rat(1, 2))) * const_pow(v0, FE::of(f, Rat(1, 2)));
        Series xi(f, 1, order, {FE::of(f, 0), FE::of(f, 1)});  // t
        Series qx = poly_series_stretch(embed_poly(fac.q, f), stretch, order);
        total = total + qx * xi * sqrt_v;
    }
    int tval = total.valuation();
    if (tval >= total.trunc()) fail(ErrorKind::InvalidArgument, "factor vanishes identically");
    std::vector<FE> sh;
    for (int k = tval; k < total.trunc(); ++k) sh.push_back(total.coeff(k));
    FE lead = sh[0];
    Series unit = Series(f, 1, total.trunc() - tval, sh) * lead.inv();
    // absorb the leading constant into the unit's normalization
    ValSeries out{Rat(tval) * fac.exponent, unit.pow_unit(FE::of(f, fac.exponent))};
    out.unit = out.unit * const_pow(lead, FE::of(f, fac.exponent));
    return out;
}

Series factored_series(const FE& cst, const std::vector<CurveFactor>& facs, const CatalogEntry& e,
                       const FieldPtr& f, int order, bool need_vanishing) {
    // Each factor loses validity equal to its own t-valuation when it is
    // normalized to a unit; pad the working order accordingly, then report
    // the honest truncation.
    int stretch = e.subst_t2 ? 2 : 1;
    int pad = 0;
    for (auto& fac : facs) {
        int v = 0;
        Series probe = poly_series_stretch(embed_poly(fac.p, f), stretch, 8);
        v = fac.q.is_zero() ? probe.valuation() : std::min(probe.valuation(), 8);
        if (!fac.q.is_zero()) v = std::min(v, 1 + poly_series_stretch(embed_poly(fac.q, f), stretch, 8).valuation());
        pad += std::max(0, std::min(v, 8));
    }
    int work = order + pad + 2;
    Rat val(0);
    Series acc = Series::constant(f, cst.lift_to(f), work);
    for (auto& fac : facs) {
        ValSeries vs = factor_series(fac, e, f, work);
        val += vs.val;
        acc = acc * vs.unit;
    }
    if (!is_integer(val))
        fail(ErrorKind::InvalidArgument, "fractional total valuation in closed form");
    long shift = val.get_num().get_si();
    if (shift < 0) fail(ErrorKind::InvalidArgument, "negative valuation in closed form");
    if (need_vanishing && shift < 1)
        fail(ErrorKind::InvalidArgument, "argument does not vanish at the base point");
    int valid = std::min((long)order, acc.trunc() + shift);
    std::vector<FE> c((size_t)shift, FE::of(f, 0));
    for (int k = 0; k + shift < valid && k < acc.trunc(); ++k) c.push_back(acc.coeff(k));
    return Series(f, 1, (int)valid, c);
}

CheckResult identity_check_for_tuple(const CatalogEntry& e, int order,
                                     const std::vector<Rat>& tuple, bool formal) {
    std::ostringstream label;
    label << (formal ? "series(formal" : "series(");
    for (size_t i = 0; i < tuple.size(); ++i)
        label << (i || formal ? "," : "") << e.symbols[i] << "=" << to_string(tuple[i]);
    label << ")";
    CheckResult res{label.str(), false, false, ""};
    FieldPtr f = formal && !e.symbols.empty() ? e.working_field() : e.base_field();
    SymbolEnv env = make_env(e, f, tuple, formal);
    int n = order + 1;
    try {
        if (e.is_evaluation()) {
            HpgParams p = eval_params(e.params, f, env);
            if (invalid_c(p.c)) {
                res.skipped = true;
                res.detail = "degenerate lower parameter";
                return res;
            }
            int tn = n * (e.subst_t2 ? 2 : 1);  // order in the series variable
            Series arg;
            if (!e.phi_factors.empty()) {
                arg = factored_series(e.phi_const.lift_to(f), e.phi_factors, e, f, tn, true);
            } else if (e.phi) {
                arg = Series::from_ratfunc(lift_ratfunc(*e.phi, f), tn);
            } else {
                fail(ErrorKind::InvalidArgument, "evaluation entry without an argument");
            }
            Series lhs = hypergeometric_series(p, tn).compose(arg.truncated(tn));
            Series rhsS;
            if (!e.rhs_factors.empty())
                rhsS = factored_series(e.rhs_const.lift_to(f), e.rhs_factors, e, f, tn, false);
            else
                rhsS = eval_radical(e.rhs, f, env).series(tn);
            int mis = Series::first_mismatch(lhs, rhsS, tn);
            if (mis < 0) {
                res.pass = true;
            } else {
                res.detail = "first mismatch at index " + std::to_string(mis);
            }
            return res;
        }
        TwoTermIdentity id;
        id.tilde = eval_params(e.tilde, f, env);
        id.params = eval_params(e.params, f, env);
        if (invalid_c(id.tilde.c) || invalid_c(id.params.c)) {
            res.skipped = true;
            res.detail = "degenerate lower parameter";
            return res;
        }
        id.phi = lift_ratfunc(*e.phi, f);
        id.theta = e.theta ? eval_radical(e.theta, f, env) : RadicalExpr::one(f);
        int mis = two_term_mismatch(id, order);
        if (mis >= 0) {
            res.detail = "first mismatch at index " + std::to_string(mis);
            return res;
        }
        auto comp = companion_mismatch(id, order);
        if (comp.applicable && comp.mismatch >= 0) {
            res.detail = "companion mismatch at index " + std::to_string(comp.mismatch);
            return res;
        }
        res.pass = true;
        if (!comp.applicable) res.detail = "companion degenerate, skipped";
    } catch (const Error& err) {
        res.detail = err.what();
    }
    return res;
}

}  // namespace

Certificate verify_identity(const CatalogEntry& e, int order) {
    Certificate cert{e.id, order, {}};
    if (!e.has_identity()) {
        cert.checks.push_back({"series", false, true, "no identity data"});
        return cert;
    }
    SamplePlan plan = make_plan(e, {});
    if (e.symbols.empty()) {
        cert.checks.push_back(identity_check_for_tuple(e, order, {}, false));
        return cert;
    }
    // formal in the first symbol; each declared tuple supplies the remaining
    // symbols (a single run when there is nothing else to sample)
    size_t run_count = e.symbols.size() == 1 ? 1 : plan.tuples.size();
    for (size_t i = 0; i < run_count; ++i) {
        auto check = identity_check_for_tuple(e, order, plan.tuples[i], true);
        // resample through the pool on degeneration
        size_t pool_at = 0;
        while (check.skipped && pool_at < sample_pool().size()) {
            auto tuple = plan.tuples[i];
            for (size_t j = 1; j < tuple.size(); ++j) tuple[j] = sample_pool()[pool_at++];
            if (tuple.size() <= 1) break;
            check = identity_check_for_tuple(e, order, tuple, true);
        }
        cert.checks.push_back(check);
    }
    return cert;
}

Certificate verify_ramification(const CatalogEntry& e) {
    Certificate cert{e.id, 0, {}};
    if (!e.ramify_skip.empty()) {
        cert.checks.push_back({"ramification", false, true, e.ramify_skip});
        return cert;
    }
    if (!e.phi || !e.pattern) {
        cert.checks.push_back({"ramification", false, false, "no covering or pattern data"});
        return cert;
    }
    CheckResult res{"ramification", false, false, ""};
    try {
        auto rep = analyze_covering(*e.phi);
        if (!(rep.pattern == *e.pattern)) {
            res.detail = "pattern " + rep.pattern.str() + " != expected " + e.pattern->str();
            cert.checks.push_back(res);
            return cert;
        }
        if (rep.hurwitz_defect != 0) {
            res.detail = "branching outside the three marked fibers";
            cert.checks.push_back(res);
            return cert;
        }
        res.pass = true;
        cert.checks.push_back(res);
        // exponent transfer and the degree formula, at sampled symbol values;
        // closed-form evaluations have no hypergeometric equation upstairs
        if (e.below[0] && e.above[0] && !e.is_evaluation()) {
            SamplePlan plan = make_plan(e, {});
            FieldPtr f = e.base_field();
            int tuples_checked = 0;
            for (auto& tuple : plan.tuples) {
                SymbolEnv env = make_env(e, f, tuple, false);
                CheckResult tr{"exponent-transfer", false, false, ""};
                try {
                    // differences are taken non-negative (the standing
                    // convention for real exponent differences)
                    ExponentTriple below, above;
                    for (int i = 0; i < 3; ++i) {
                        FE b = eval_scalar(e.below[i], f, env);
                        FE a = eval_scalar(e.above[i], f, env);
                        if (!b.is_rational() || !a.is_rational())
                            fail(ErrorKind::InvalidArgument, "non-rational led");
                        below[i] = AffineForm(abs(b.to_rat()));
                        above[i] = AffineForm(abs(a.to_rat()));
                    }
                    std::vector<AffineForm> sing;
                    for (auto& v : transform_exponents(*e.pattern, below))
                        if (!v.is_one()) sing.push_back(v);
                    std::sort(sing.begin(), sing.end());
                    std::vector<AffineForm> expect;
                    for (auto& a : above)
                        if (!a.is_one()) expect.push_back(a);
                    std::sort(expect.begin(), expect.end());
                    bool ok = sing == expect && degree_formula_holds(below, above, e.degree);
                    tr.pass = ok;
                    if (!ok) tr.detail = "transfer mismatch";
                } catch (const Error& err) {
                    tr.detail = err.what();
                }
                cert.checks.push_back(tr);
                if (++tuples_checked >= 3) break;
            }
        }
    } catch (const Error& err) {
        res.detail = err.what();
        cert.checks.push_back(res);
    }
    return cert;
}

Certificate verify_composition(const CatalogEntry& e, const std::vector<CatalogEntry>& all) {
    Certificate cert{e.id, 0, {}};
    if (e.compositions.empty()) return cert;
    auto find = [&](const std::string& id) -> const CatalogEntry* {
        for (auto& c : all)
            if (c.id == id) return &c;
        return nullptr;
    };
    for (auto& chain : e.compositions) {
        CheckResult res{"composition(" + chain[0] + (chain.size() > 1 ? ",..." : "") + ")", false,
                        false, ""};
        try {
            // working field: the largest number field appearing in the chain
            NumberFieldPtr nf = e.nf;
            std::vector<const CatalogEntry*> members;
            for (auto& id : chain) {
                auto* m = find(id);
                if (!m) fail(ErrorKind::InvalidArgument, "unknown chain member " + id);
                if (!m->phi) fail(ErrorKind::InvalidArgument, "chain member without covering");
                if (!m->nf->is_q()) {
                    if (!nf->is_q() && nf->min_poly() != m->nf->min_poly())
                        fail(ErrorKind::NotImplemented, "mixed extension fields in a chain");
                    nf = m->nf;
                }
                members.push_back(m);
            }
            FieldPtr f = Field::of(nf);
            auto embed = [&](const RatFunc& r) {
                if (r.field()->same(*f)) return r;
                return embed_ratfunc(r, f);
            };
            RatFunc target = embed(*e.phi);
            // peel factors outer to inner
            std::function<bool(RatFunc, size_t)> peel = [&](RatFunc rest, size_t idx) -> bool {
                if (idx + 1 == members.size()) {
                    RatFunc h = embed(*members[idx]->phi);
                    if (rest.map_degree() != h.map_degree()) return false;
                    auto pr = analyze_covering(rest);
                    auto ph = analyze_covering(h);
                    if (pr.hurwitz_defect != 0 || ph.hurwitz_defect != 0) return false;
                    auto a = pr.pattern.fibers, b = ph.pattern.fibers;
                    std::sort(a.begin(), a.end());
                    std::sort(b.begin(), b.end());
                    return a == b;
                }
                RatFunc g = embed(*members[idx]->phi);
                for (auto& T : target_permutations(f)) {
                    RatFunc adjusted = moebius_act(T.inverse(), rest, MoebiusSide::Target);
                    for (auto& H : solve_inner(g, adjusted))
                        if (peel(H, idx + 1)) return true;
                }
                return false;
            };
            res.pass = peel(target, 0);
            if (!res.pass) res.detail = "no decomposition along the declared chain";
        } catch (const Error& err) {
            res.detail = err.what();
        }
        cert.checks.push_back(res);
    }
    return cert;
}

VerifySummary verify_all(const std::vector<CatalogEntry>& entries, const VerifyOptions& opt) {
    std::vector<const CatalogEntry*> todo;
    for (auto& e : entries) {
        if (!opt.klass.empty() && e.klass != opt.klass) continue;
        if (!opt.id.empty() && e.id != opt.id) continue;
        todo.push_back(&e);
    }
    std::vector<Certificate> certs(todo.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) break;
            const CatalogEntry& e = *todo[i];
            Certificate cert{e.id, opt.order, {}};
            if (opt.identities) {
                auto c = verify_identity(e, opt.order);
                for (auto& ch : c.checks) cert.checks.push_back(ch);
            }
            if (opt.ramification) {
                auto c = verify_ramification(e);
                for (auto& ch : c.checks) cert.checks.push_back(ch);
            }
            if (opt.compositions) {
                auto c = verify_composition(e, entries);
                for (auto& ch : c.checks) cert.checks.push_back(ch);
            }
            certs[i] = cert;
        }
    };
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(certs.begin(), certs.end(),
              [](const Certificate& a, const Certificate& b) { return a.id < b.id; });
    VerifySummary sum;
    sum.certificates = certs;
    for (auto& c : certs) {
        ++sum.checked;
        if (!c.pass()) ++sum.failed;
        for (auto& ch : c.checks)
            if (ch.skipped) ++sum.skipped;
    }
    return sum;
}

}  // namespace hpg
