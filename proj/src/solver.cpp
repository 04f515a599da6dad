#include "hpg/solver.hpp"

#include <algorithm>
#include <map>

#include "hpg/series.hpp"

namespace hpg {

namespace {

// ------------------------------------------------------------------ MPoly
// Sparse multivariate polynomial for the undetermined-coefficient systems.

struct MPoly {
    FieldPtr f;
    int nvars = 0;
    std::map<std::vector<int>, FE> terms;

    static MPoly zero(const FieldPtr& f, int nvars) { return {f, nvars, {}}; }
    static MPoly constant(const FieldPtr& f, int nvars, const FE& c) {
        MPoly p{f, nvars, {}};
        if (!c.is_zero()) p.terms[std::vector<int>(nvars, 0)] = c;
        return p;
    }
    static MPoly var(const FieldPtr& f, int nvars, int v) {
        MPoly p{f, nvars, {}};
        std::vector<int> e(nvars, 0);
        e[v] = 1;
        p.terms[e] = FE::of(f, 1);
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() ||
               (terms.size() == 1 && terms.begin()->first == std::vector<int>(nvars, 0));
    }
    FE constant_value() const {
        auto it = terms.find(std::vector<int>(nvars, 0));
        return it == terms.end() ? FE::of(f, 0) : it->second;
    }

    void add_term(const std::vector<int>& e, const FE& c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    MPoly operator+(const MPoly& o) const {
        MPoly out = *this;
        for (auto& [e, c] : o.terms) out.add_term(e, c);
        return out;
    }
    MPoly operator-(const MPoly& o) const {
        MPoly out = *this;
        for (auto& [e, c] : o.terms) out.add_term(e, -c);
        return out;
    }
    MPoly operator*(const MPoly& o) const {
        MPoly out = zero(f, nvars);
        for (auto& [e1, c1] : terms)
            for (auto& [e2, c2] : o.terms) {
                std::vector<int> e(nvars);
                for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
                out.add_term(e, c1 * c2);
            }
        return out;
    }
    MPoly operator*(const FE& s) const {
        MPoly out = zero(f, nvars);
        if (s.is_zero()) return out;
        for (auto& [e, c] : terms) out.terms[e] = c * s;
        return out;
    }

    int degree_in(int v) const {
        int d = 0;
        for (auto& [e, c] : terms) d = std::max(d, e[v]);
        return d;
    }
    int min_degree_in(int v) const {
        int d = INT_MAX;
        for (auto& [e, c] : terms) d = std::min(d, e[v]);
        return terms.empty() ? 0 : d;
    }
    bool uses(int v) const { return degree_in(v) > 0; }

    MPoly substitute(int v, const MPoly& value) const {
        int dv = degree_in(v);
        std::vector<MPoly> pows{constant(f, nvars, FE::of(f, 1))};
        for (int i = 1; i <= dv; ++i) pows.push_back(pows.back() * value);
        MPoly out = zero(f, nvars);
        for (auto& [e, c] : terms) {
            std::vector<int> e2 = e;
            int k = e2[v];
            e2[v] = 0;
            MPoly term = zero(f, nvars);
            term.terms[e2] = c;
            out = out + term * pows[k];
        }
        return out;
    }

    MPoly divide_by_var_power(int v, int k) const {
        MPoly out = zero(f, nvars);
        for (auto& [e, c] : terms) {
            std::vector<int> e2 = e;
            e2[v] -= k;
            out.terms[e2] = c;
        }
        return out;
    }

    std::vector<MPoly> as_univariate(int v) const {
        std::vector<MPoly> out((size_t)degree_in(v) + 1, zero(f, nvars));
        for (auto& [e, c] : terms) {
            std::vector<int> e2 = e;
            int k = e2[v];
            e2[v] = 0;
            out[k].add_term(e2, c);
        }
        return out;
    }
};

using Assignment = std::map<int, FE>;

// Free variables on a (necessarily degenerate) positive-dimensional branch
// are sampled at a fixed generic value; validity checks on the assembled map
// decide the branch.
constexpr long kFreeSample = 1009;

FE resolve_value(const MPoly& p, const Assignment& s, const FieldPtr& f) {
    MPoly cur = p;
    for (auto& [w, fe] : s) cur = cur.substitute(w, MPoly::constant(f, cur.nvars, fe));
    if (!cur.is_constant()) {
        for (int v = 0; v < cur.nvars; ++v)
            if (cur.uses(v)) cur = cur.substitute(v, MPoly::constant(f, cur.nvars, FE::of(f, kFreeSample)));
    }
    return cur.constant_value();
}

Poly to_param_poly(const MPoly& p, int v, int w, const FieldPtr& param_field) {
    auto uni = p.as_univariate(v);
    std::vector<FE> coeffs;
    for (auto& c : uni) {
        int dw = c.degree_in(w);
        std::vector<NumberField::Vec> vec((size_t)dw + 1, param_field->number_field()->zero());
        for (auto& [e, fe] : c.terms) vec[(size_t)e[w]] = fe.constant_vec();
        coeffs.push_back(FE::param_poly(param_field, vec));
    }
    return Poly(param_field, std::move(coeffs));
}

Poly to_plain_poly(const MPoly& p, int v, const FieldPtr& field) {
    auto uni = p.as_univariate(v);
    std::vector<FE> coeffs;
    for (auto& c : uni) {
        if (!c.is_constant()) fail(ErrorKind::InvalidArgument, "internal: not univariate");
        coeffs.push_back(c.constant_value());
    }
    return Poly(field, std::move(coeffs));
}

// Numerator of an element of K(a) as a Poly over K.
Poly param_numerator(const FE& g, const FieldPtr& base) {
    std::vector<FE> coeffs;
    for (auto& vec : g.param_num()) coeffs.push_back(FE::from_vec(base, vec));
    return Poly(base, coeffs);
}

// Clears denominators of a polynomial in v over K(w) and rebuilds the MPoly.
MPoly from_param_poly(const Poly& p, int v, int w, int nvars, const FieldPtr& field,
                      const FieldPtr& pf) {
    // common denominator across coefficients
    std::vector<FE> coeffs(p.coeffs());
    FE common = FE::of(pf, 1);
    for (auto& c : coeffs) {
        // multiply through by this coefficient's denominator
        FE den = FE::param_poly(pf, c.param_den());
        if (!den.is_one()) {
            for (auto& c2 : coeffs) c2 = c2 * den;
            common = common * den;
        }
    }
    MPoly out = MPoly::zero(field, nvars);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].param_den().empty() && coeffs[i].param_den().size() > 1)
            fail(ErrorKind::InvalidArgument, "internal: residual denominator");
        const auto& num = coeffs[i].param_num();
        for (size_t j = 0; j < num.size(); ++j) {
            std::vector<int> e(nvars, 0);
            e[v] = (int)i;
            e[w] = (int)j;
            out.add_term(e, FE::from_vec(field, num[j]));
        }
    }
    return out;
}

// All solutions over `field` of a small polynomial system. Strategy:
// variable-content branching, linear substitution with constant pivot,
// univariate root extraction, two-variable resultant elimination.
void solve_system(const FieldPtr& field, std::vector<MPoly> eqs, std::vector<int> active,
                  std::vector<Assignment>& out, int depth) {
    if (depth > 64) fail(ErrorKind::DegreeTooLarge, "solver recursion limit");
    std::vector<MPoly> live;
    for (auto& e : eqs) {
        if (e.is_zero()) continue;
        if (e.is_constant()) return;  // nonzero constant: inconsistent branch
        live.push_back(e);
    }
    std::vector<int> vars;
    for (int v : active) {
        bool used = false;
        for (auto& e : live)
            if (e.uses(v)) {
                used = true;
                break;
            }
        if (used) vars.push_back(v);
    }
    if (vars.empty()) {
        if (live.empty()) out.push_back({});
        return;
    }
    if (live.empty()) {
        // positive-dimensional branch: leave the variables free; the caller
        // samples them and validity checks decide the component
        out.push_back({});
        return;
    }

    auto merge = [&](std::vector<Assignment>& sols, int v, auto&& value_for) {
        for (auto& s : sols) {
            s[v] = value_for(s);
            out.push_back(s);
        }
    };
    (void)merge;

    // 1) factor out a common variable power: branch v = 0 against the cofactor
    for (size_t i = 0; i < live.size(); ++i)
        for (int v : vars) {
            int k = live[i].min_degree_in(v);
            if (k <= 0) continue;
            // branch A: v = 0
            {
                std::vector<MPoly> rest;
                for (auto& e : live) rest.push_back(e.substitute(v, MPoly::zero(field, e.nvars)));
                std::vector<int> remaining;
                for (int w : vars)
                    if (w != v) remaining.push_back(w);
                std::vector<Assignment> subs;
                solve_system(field, rest, remaining, subs, depth + 1);
                for (auto& s : subs) {
                    s[v] = FE::of(field, 0);
                    out.push_back(s);
                }
            }
            // branch B: drop the factor
            {
                std::vector<MPoly> rest = live;
                rest[i] = rest[i].divide_by_var_power(v, k);
                std::vector<Assignment> subs;
                solve_system(field, rest, vars, subs, depth + 1);
                // exclude v = 0 duplicates found again in branch B
                for (auto& s : subs) {
                    auto it = s.find(v);
                    if (it != s.end() && it->second.is_zero()) continue;
                    out.push_back(s);
                }
            }
            return;
        }

    // 2) linear substitution with invertible constant pivot
    for (size_t i = 0; i < live.size(); ++i)
        for (int v : vars) {
            if (live[i].degree_in(v) != 1) continue;
            auto uni = live[i].as_univariate(v);
            if (!uni[1].is_constant()) continue;
            FE c = uni[1].constant_value();
            MPoly value = uni[0] * (-(c.inv()));
            std::vector<MPoly> rest;
            for (size_t j = 0; j < live.size(); ++j)
                if (j != i) rest.push_back(live[j].substitute(v, value));
            std::vector<int> remaining;
            for (int w : vars)
                if (w != v) remaining.push_back(w);
            std::vector<Assignment> subs;
            solve_system(field, rest, remaining, subs, depth + 1);
            for (auto& s : subs) {
                s[v] = resolve_value(value, s, field);
                out.push_back(s);
            }
            return;
        }

    // 2b) pseudo-division elimination: an equation c(w)*v + r(w) = 0 with a
    //     non-constant pivot c. Split on c = 0; on the branch c != 0 clear v
    //     from the other equations by multiplying with powers of c.
    if (vars.size() > 2) {
        size_t best = SIZE_MAX;
        int bestv = -1;
        size_t best_size = SIZE_MAX;
        for (size_t i = 0; i < live.size(); ++i)
            for (int v : vars)
                if (live[i].degree_in(v) == 1 && live[i].terms.size() < best_size) {
                    best = i;
                    bestv = v;
                    best_size = live[i].terms.size();
                }
        if (best != SIZE_MAX) {
            int v = bestv;
            auto uni = live[best].as_univariate(v);
            MPoly c = uni[1], r = uni[0];
            // branch A: c = 0 (then r = 0 as well)
            {
                std::vector<MPoly> rest = live;
                rest.push_back(c);
                rest.push_back(r);
                rest.erase(rest.begin() + best);
                // v is unconstrained on this branch unless other equations
                // pin it; recurse with the same variable set
                std::vector<Assignment> subs;
                solve_system(field, rest, vars, subs, depth + 1);
                for (auto& s : subs)
                    if (resolve_value(c, s, field).is_zero()) out.push_back(s);
            }
            // branch B: c != 0, eliminate v
            {
                std::vector<MPoly> rest;
                for (size_t j = 0; j < live.size(); ++j) {
                    if (j == best) continue;
                    int dv = live[j].degree_in(v);
                    if (dv == 0) {
                        rest.push_back(live[j]);
                        continue;
                    }
                    // multiply by c^dv and substitute c*v -> -r
                    auto uj = live[j].as_univariate(v);
                    MPoly acc = MPoly::zero(field, live[j].nvars);
                    MPoly cpow = MPoly::constant(field, live[j].nvars, FE::of(field, 1));
                    std::vector<MPoly> cpows{cpow};
                    for (int k = 1; k <= dv; ++k) cpows.push_back(cpows.back() * c);
                    MPoly rpow = MPoly::constant(field, live[j].nvars, FE::of(field, 1));
                    for (int k = 0; k <= dv; ++k) {
                        acc = acc + uj[k] * rpow * cpows[dv - k] *
                                        FE::of(field, (k % 2 == 0) ? 1 : -1);
                        if (k < dv) rpow = rpow * r;
                    }
                    rest.push_back(acc);
                }
                std::vector<int> remaining;
                for (int w : vars)
                    if (w != v) remaining.push_back(w);
                std::vector<Assignment> subs;
                solve_system(field, rest, remaining, subs, depth + 1);
                for (auto& s : subs) {
                    FE cv = resolve_value(c, s, field);
                    if (cv.is_zero()) continue;  // other branch
                    FE rv = resolve_value(r, s, field);
                    s[v] = -(rv / cv);
                    out.push_back(s);
                }
            }
            return;
        }
    }

    // 3) univariate
    if (vars.size() == 1) {
        int v = vars[0];
        Poly first = to_plain_poly(live[0], v, field);
        for (auto& r : field_roots(first)) {
            bool ok = true;
            for (auto& e : live)
                if (!to_plain_poly(e, v, field).eval(r).is_zero()) {
                    ok = false;
                    break;
                }
            if (ok) out.push_back({{v, r}});
        }
        return;
    }

    // 4) two variables: resultant elimination
    if (vars.size() == 2) {
        int v = vars[0], w = vars[1];
        FieldPtr pf = Field::with_param(field->number_field(), "t#");
        FieldPtr base = Field::of(field->number_field());
        std::vector<FE> wroots;
        auto add_roots = [&](const Poly& g) {
            for (auto& r : field_roots(g))
                if (std::find_if(wroots.begin(), wroots.end(),
                                 [&](const FE& x) { return x == r; }) == wroots.end())
                    wroots.push_back(r);
        };
        bool bounded = false;
        // equations not using v bound w directly
        for (auto& e : live)
            if (!e.uses(v)) {
                add_roots(to_plain_poly(e, w, base));
                bounded = true;
            }
        // resultants of pairs using v
        std::vector<size_t> idx;
        for (size_t i = 0; i < live.size(); ++i)
            if (live[i].uses(v)) idx.push_back(i);
        for (size_t a = 0; a + 1 < idx.size() && !bounded; ++a) {
            for (size_t b2 = a + 1; b2 < idx.size() && !bounded; ++b2) {
                Poly e1 = to_param_poly(live[idx[a]], v, w, pf);
                Poly e2 = to_param_poly(live[idx[b2]], v, w, pf);
                FE res = resultant(e1, e2);
                if (res.is_zero()) continue;  // common component; try other pairs
                Poly rp = param_numerator(res, base);
                if (rp.degree() < 1) return;  // nonzero constant: no common root
                add_roots(rp);
                bounded = true;
            }
        }
        if (!bounded && idx.size() >= 2) {
            // the equations share a component; split off their gcd
            Poly e1 = to_param_poly(live[idx[0]], v, w, pf);
            Poly e2 = to_param_poly(live[idx[1]], v, w, pf);
            Poly g = gcd(e1, e2);
            if (g.degree() >= 1) {
                int nv = live[0].nvars;
                // branch A: the gcd vanishes
                {
                    std::vector<MPoly> rest = live;
                    rest.push_back(from_param_poly(g, v, w, nv, field, pf));
                    std::vector<Assignment> subs;
                    solve_system(field, rest, vars, subs, depth + 1);
                    for (auto& s : subs) out.push_back(s);
                }
                // branch B: both cofactors vanish
                {
                    std::vector<MPoly> rest;
                    rest.push_back(from_param_poly(exact_div(e1, g), v, w, nv, field, pf));
                    rest.push_back(from_param_poly(exact_div(e2, g), v, w, nv, field, pf));
                    for (size_t i2 = 0; i2 < live.size(); ++i2)
                        if (i2 != idx[0] && i2 != idx[1]) rest.push_back(live[i2]);
                    std::vector<Assignment> subs;
                    solve_system(field, rest, vars, subs, depth + 1);
                    for (auto& s : subs) {
                        bool dup = false;
                        for (auto& prev : out)
                            if (prev == s) dup = true;
                        if (!dup) out.push_back(s);
                    }
                }
                return;
            }
        }
        if (!bounded)
            fail(ErrorKind::DegreeTooLarge, "could not bound the last two variables");
        for (auto& r : wroots) {
            FE rf = r.lift_to(field);
            std::vector<MPoly> rest;
            for (auto& e : live)
                rest.push_back(e.substitute(w, MPoly::constant(field, e.nvars, rf)));
            std::vector<Assignment> subs;
            solve_system(field, rest, {v}, subs, depth + 1);
            for (auto& s : subs) {
                s[w] = rf;
                out.push_back(s);
            }
        }
        return;
    }
    fail(ErrorKind::DegreeTooLarge, "covering system needs more elimination than supported");
}

struct ClassSpec {
    int mult;
    int count;
};

std::vector<ClassSpec> classes_of(const std::vector<int>& fiber) {
    std::map<int, int> m;
    for (int p : fiber) m[p]++;
    std::vector<ClassSpec> out;
    for (auto& [mult, count] : m) out.push_back({mult, count});
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.mult > b.mult; });
    return out;
}

}  // namespace

std::optional<std::vector<FE>> solve_linear(std::vector<std::vector<FE>> M, std::vector<FE> b) {
    size_t rows = M.size();
    if (rows == 0) return std::vector<FE>{};
    size_t cols = M[0].size();
    const FieldPtr& f = b[0].field();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && M[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[r]);
        std::swap(b[piv], b[r]);
        FE inv = M[r][c].inv();
        for (size_t k = c; k < cols; ++k) M[r][k] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            FE t = M[i][c];
            for (size_t k = c; k < cols; ++k) M[i][k] -= t * M[r][k];
            b[i] -= t * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<FE> x(cols, FE::of(f, 0));
    for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

std::optional<std::vector<FE>> kernel_vector(std::vector<std::vector<FE>> M, const FieldPtr& f) {
    size_t rows = M.size();
    if (rows == 0) return std::nullopt;
    size_t cols = M[0].size();
    std::vector<int> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && M[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[r]);
        FE inv = M[r][c].inv();
        for (size_t k = c; k < cols; ++k) M[r][k] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            FE t = M[i][c];
            for (size_t k = c; k < cols; ++k) M[i][k] -= t * M[r][k];
        }
        pivot_of_col[c] = (int)r;
        ++r;
    }
    int free_col = -1;
    for (size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] < 0) {
            free_col = (int)c;
            break;
        }
    if (free_col < 0) return std::nullopt;
    std::vector<FE> x(cols, FE::of(f, 0));
    x[free_col] = FE::of(f, 1);
    for (size_t c = 0; c < cols; ++c)
        if (pivot_of_col[c] >= 0) x[c] = -M[(size_t)pivot_of_col[c]][free_col];
    return x;
}

std::vector<Moebius> target_permutations(const FieldPtr& f) {
    FE zero = FE::of(f, 0), one = FE::of(f, 1);
    return {
        Moebius(one, zero, zero, one),   // z
        Moebius(-one, one, zero, one),   // 1-z
        Moebius(zero, one, one, zero),   // 1/z
        Moebius(one, zero, one, -one),   // z/(z-1)
        Moebius(zero, one, -one, one),   // 1/(1-z)
        Moebius(one, -one, one, zero),   // (z-1)/z
    };
}

std::vector<RatFunc> solve_covering(const BranchingPattern& pattern, const FieldPtr& field) {
    if (pattern.degree > 6) fail(ErrorKind::DegreeTooLarge, "covering solver supports degree <= 6");
    if (!pattern.consistent()) fail(ErrorKind::InvalidArgument, "inconsistent branching pattern");
    const int d = pattern.degree;
    std::array<std::vector<ClassSpec>, 3> cls = {classes_of(pattern.fibers[0]),
                                                 classes_of(pattern.fibers[1]),
                                                 classes_of(pattern.fibers[2])};
    std::vector<RatFunc> results;
    const FieldPtr& f = field;

    // A pin places one of the marked source points 0, 1, infinity into a
    // multiplicity class of some fiber.
    struct Pin {
        int fiber;
        int klass;
    };
    std::vector<Pin> slots;
    for (int fi = 0; fi < 3; ++fi)
        for (size_t c = 0; c < cls[fi].size(); ++c) slots.push_back({fi, (int)c});

    auto capacity = [&](const Pin& p) { return cls[p.fiber][p.klass].count; };

    for (auto& pin0 : slots)
        for (auto& pin1 : slots)
            for (auto& pinI : slots) {
                // capacity constraints (0 and 1 are distinct points; infinity too)
                std::map<std::pair<int, int>, int> load;
                load[{pin0.fiber, pin0.klass}]++;
                load[{pin1.fiber, pin1.klass}]++;
                load[{pinI.fiber, pinI.klass}]++;
                bool ok = true;
                for (auto& [key, n] : load)
                    if (n > cls[key.first][key.second].count) ok = false;
                if (!ok) continue;

                // count unknown coefficients
                int nvars = 2;  // 0: A (scale of fiber-0 product), 1: B (fiber-1 scale)
                struct Block {
                    int fiber, mult, deg;
                    int roots0, roots1;  // pinned finite roots
                    bool at_inf;
                    int var_base;
                };
                std::vector<Block> blocks;
                for (int fi = 0; fi < 3; ++fi)
                    for (size_t c = 0; c < cls[fi].size(); ++c) {
                        Block b;
                        b.fiber = fi;
                        b.mult = cls[fi][c].mult;
                        b.roots0 = (pin0.fiber == fi && pin0.klass == (int)c) ? 1 : 0;
                        b.roots1 = (pin1.fiber == fi && pin1.klass == (int)c) ? 1 : 0;
                        b.at_inf = (pinI.fiber == fi && pinI.klass == (int)c);
                        b.deg = cls[fi][c].count - (b.at_inf ? 1 : 0);
                        b.var_base = nvars;
                        nvars += b.deg - b.roots0 - b.roots1;
                        blocks.push_back(b);
                    }

                using XPoly = std::vector<MPoly>;
                auto xp_mul = [&](const XPoly& a, const XPoly& b) {
                    XPoly o(a.size() + b.size() - 1, MPoly::zero(f, nvars));
                    for (size_t i = 0; i < a.size(); ++i)
                        for (size_t j = 0; j < b.size(); ++j)
                            if (!a[i].is_zero() && !b[j].is_zero())
                                o[i + j] = o[i + j] + a[i] * b[j];
                    return o;
                };
                auto xp_pow = [&](const XPoly& base, int e) {
                    XPoly o{MPoly::constant(f, nvars, FE::of(f, 1))};
                    for (int i = 0; i < e; ++i) o = xp_mul(o, base);
                    return o;
                };

                // factor g: monic of degree b.deg with fixed roots at 0/1
                auto factor_poly = [&](const Block& b) {
                    int free_deg = b.deg - b.roots0 - b.roots1;
                    XPoly g(free_deg + 1, MPoly::zero(f, nvars));
                    g[free_deg] = MPoly::constant(f, nvars, FE::of(f, 1));
                    for (int i = 0; i < free_deg; ++i) g[i] = MPoly::var(f, nvars, b.var_base + i);
                    if (b.roots0) g = xp_mul(g, XPoly{MPoly::zero(f, nvars),
                                                      MPoly::constant(f, nvars, FE::of(f, 1))});
                    if (b.roots1)
                        g = xp_mul(g, XPoly{MPoly::constant(f, nvars, FE::of(f, -1)),
                                            MPoly::constant(f, nvars, FE::of(f, 1))});
                    return g;
                };

                XPoly N{MPoly::constant(f, nvars, FE::of(f, 1))};
                XPoly M1 = N, D = N;
                for (auto& b : blocks) {
                    XPoly fp = xp_pow(factor_poly(b), b.mult);
                    if (b.fiber == 0) N = xp_mul(N, fp);
                    if (b.fiber == 1) M1 = xp_mul(M1, fp);
                    if (b.fiber == 2) D = xp_mul(D, fp);
                }
                int degN = (int)N.size() - 1, degM = (int)M1.size() - 1, degD = (int)D.size() - 1;
                // scales: phi = A*N/D, phi - 1 = B*M1/D: A*N - D = B*M1.
                // force scalars by leading-degree comparison
                MPoly A = MPoly::var(f, nvars, 0);
                MPoly B = MPoly::var(f, nvars, 1);
                std::vector<MPoly> eqs;
                int top = std::max({degN, degM, degD});
                for (int i = 0; i <= top; ++i) {
                    MPoly lhs = MPoly::zero(f, nvars);
                    if (i <= degN) lhs = lhs + A * N[i];
                    if (i <= degD) lhs = lhs - D[i];
                    if (i <= degM) lhs = lhs - B * M1[i];
                    eqs.push_back(lhs);
                }
                std::vector<int> vars;
                for (int v = 0; v < nvars; ++v) vars.push_back(v);
                std::vector<Assignment> sols;
                solve_system(f, eqs, vars, sols, 0);
                for (auto& s : sols) {
                    auto val = [&](int v) {
                        auto it = s.find(v);
                        return it == s.end() ? FE::of(f, kFreeSample) : it->second;
                    };
                    if (val(0).is_zero() || val(1).is_zero()) continue;
                    auto eval_xp = [&](const XPoly& p) {
                        std::vector<FE> c;
                        for (auto& mp : p) c.push_back(resolve_value(mp, s, f));
                        return Poly(f, c);
                    };
                    Poly num = eval_xp(N) * val(0);
                    (void)val;
                    Poly den = eval_xp(D);
                    if (num.is_zero() || den.is_zero()) continue;
                    if (!gcd(num, den).is_constant()) continue;
                    RatFunc phi(num, den);
                    if (phi.map_degree() != d) continue;
                    try {
                        if (!(analyze_covering(phi).pattern == pattern)) continue;
                    } catch (const Error&) {
                        continue;
                    }
                    bool dup = false;
                    for (auto& known : results)
                        if (known == phi || moebius_equivalent_source(known, phi)) {
                            dup = true;
                            break;
                        }
                    if (!dup) results.push_back(phi);
                }
            }
    return results;
}

namespace {

struct MarkedPoint {
    std::optional<FE> location;
    int fiber;
    int mult;
};

std::vector<MarkedPoint> marked_points(const RatFunc& f) {
    std::vector<MarkedPoint> out;
    int d = f.map_degree();
    auto scan = [&](const Poly& p, int fiber) {
        if (!p.is_zero() && p.degree() > 0)
            for (auto& [fac, m] : squarefree_decompose(p))
                for (auto& r : field_roots(fac)) out.push_back({r, fiber, m});
        int at_inf = d - (p.is_zero() ? 0 : p.degree());
        if (at_inf > 0) out.push_back({std::nullopt, fiber, at_inf});
    };
    scan(f.num(), 0);
    scan(f.num() - f.den(), 1);
    scan(f.den(), 2);
    return out;
}

}  // namespace

bool moebius_equivalent_source(const RatFunc& f, const RatFunc& g) {
    if (f.map_degree() != g.map_degree()) return false;
    auto pf = analyze_covering(f).pattern, pg = analyze_covering(g).pattern;
    if (!(pf == pg)) return false;
    auto mf = marked_points(f), mg = marked_points(g);
    std::vector<MarkedPoint> gpts;
    for (auto& p : mg) {
        gpts.push_back(p);
        if (gpts.size() == 3) break;
    }
    if (gpts.size() < 3) return false;
    const FieldPtr& fld = f.field();
    std::vector<std::vector<size_t>> options(3);
    for (int i = 0; i < 3; ++i)
        for (size_t j = 0; j < mf.size(); ++j)
            if (mf[j].fiber == gpts[i].fiber && mf[j].mult == gpts[i].mult)
                options[i].push_back(j);
    for (size_t a : options[0])
        for (size_t b : options[1])
            for (size_t c : options[2]) {
                if (a == b || b == c || a == c) continue;
                try {
                    Moebius m = Moebius::through(
                        fld, {gpts[0].location, gpts[1].location, gpts[2].location},
                        {mf[a].location, mf[b].location, mf[c].location});
                    if (moebius_act(m, f, MoebiusSide::Source) == g) return true;
                } catch (const Error&) {
                    continue;
                }
            }
    return false;
}

bool moebius_equivalent(const RatFunc& f, const RatFunc& g) {
    for (auto& t : target_permutations(f.field())) {
        RatFunc tf = moebius_act(t, f, MoebiusSide::Target);
        if (moebius_equivalent_source(tf, g)) return true;
    }
    return false;
}

std::vector<RatFunc> solve_inner(const RatFunc& outer, const RatFunc& f) {
    const FieldPtr& fld = f.field();
    int dg = outer.map_degree();
    int dtotal = f.map_degree();
    if (dtotal % dg != 0) return {};
    int dh = dtotal / dg;
    int prec = 2 * dh + 6;
    std::vector<RatFunc> found;
    std::vector<Rat> bases = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(1, 2), Rat(3), Rat(-2), Rat(5),
                              Rat(1, 3), Rat(7)};
    for (auto& x0 : bases) {
        FE x0f = FE::of(fld, x0);
        // a pole of f at the base point: solve (1/outer) o H = 1/f instead
        RatFunc fb = f, outerb = outer;
        if (f.den().eval(x0f).is_zero()) {
            if (f.num().eval(x0f).is_zero()) continue;
            fb = RatFunc(f.den(), f.num());
            outerb = RatFunc(outer.den(), outer.num());
        }
        const RatFunc& fref = fb;
        const RatFunc& outer_ref = outerb;
        FE z0 = fref.eval(x0f);
        Poly nsh = fref.num().shifted(x0f), dsh = fref.den().shifted(x0f);
        Series F = Series::from_poly(nsh).truncated(prec) / Series::from_poly(dsh).truncated(prec) -
                   Series::constant(fld, z0, prec);
        if (F.known_zero()) continue;
        int v = F.valuation();
        Poly eqn = outer_ref.num() - outer_ref.den() * z0;
        struct Branch {
            std::optional<FE> y0;
            int mult;
        };
        std::vector<Branch> branches;
        if (!eqn.is_zero() && eqn.degree() > 0)
            for (auto& [fac, m] : squarefree_decompose(eqn))
                for (auto& r : field_roots(fac)) branches.push_back({r, m});
        int minf = dg - (eqn.is_zero() ? 0 : eqn.degree());
        if (minf > 0) branches.push_back({std::nullopt, minf});
        for (auto& br : branches) {
            int k = br.mult;
            if (v % k != 0) continue;
            RatFunc work = outer_ref;
            bool inverted = false;
            FE y0 = FE::of(fld, 0);
            if (br.y0.has_value()) {
                y0 = *br.y0;
            } else {
                work = outer_ref.compose(
                    RatFunc(Poly::constant(fld, FE::of(fld, 1)), Poly::x(fld)));
                inverted = true;
            }
            if (work.den().eval(y0).is_zero()) continue;
            Poly gn = work.num().shifted(y0), gd = work.den().shifted(y0);
            Series G = Series::from_poly(gn).truncated(prec + k) /
                           Series::from_poly(gd).truncated(prec + k) -
                       Series::constant(fld, z0, prec + k);
            if (G.known_zero() || G.valuation() != k) continue;
            FE ck = G.coeff(k);
            FE lead = F.coeff(v) / ck;
            std::vector<FE> roots_k;
            {
                std::vector<FE> cs((size_t)k + 1, FE::of(fld, 0));
                cs[0] = -lead;
                cs[k] = FE::of(fld, 1);
                roots_k = field_roots(Poly(fld, cs));
            }
            // G as a function of u, without the constant: G(u) = sum_{i>=k} g_i u^i
            std::vector<FE> gcoeffs;
            for (int i = 0; i < std::min(G.trunc(), prec + k); ++i) gcoeffs.push_back(G.coeff(i));
            Series Gser(fld, 1, std::min(G.trunc(), prec + k), gcoeffs);
            std::vector<FE> gpc;
            for (int i = 1; i < Gser.trunc(); ++i) gpc.push_back(Gser.coeff(i) * (long)i);
            Series Gder(fld, 1, Gser.trunc() - 1, gpc);
            for (auto& rho : roots_k) {
                std::vector<FE> u0((size_t)v / k + 1, FE::of(fld, 0));
                u0[v / k] = rho;
                Series u(fld, 1, prec, std::move(u0));
                for (int it = 0; it < prec + 2; ++it) {
                    Series diff = Gser.compose(u) - F;
                    if (diff.known_zero()) break;
                    Series Gp = Gder.compose(u);
                    if (Gp.known_zero()) break;
                    // Newton step; division may lose precision at the top,
                    // the loop re-checks the residual each round
                    u = (u - diff / Gp).truncated(prec);
                }
                if (!(Gser.compose(u) - F).known_zero()) continue;
                Series H = Series::constant(fld, y0, prec) + u;
                int rows = 2 * dh + 2;
                std::vector<std::vector<FE>> Mx(rows, std::vector<FE>(2 * dh + 2, FE::of(fld, 0)));
                for (int r = 0; r < rows; ++r) {
                    if (r <= dh) Mx[r][r] = FE::of(fld, 1);
                    for (int qc = 0; qc <= dh; ++qc) {
                        int hidx = r - qc;
                        if (hidx >= 0 && hidx < H.trunc()) Mx[r][dh + 1 + qc] = -H.coeff(hidx);
                    }
                }
                auto kv = kernel_vector(Mx, fld);
                if (!kv) continue;
                std::vector<FE> pc(kv->begin(), kv->begin() + dh + 1);
                std::vector<FE> qc(kv->begin() + dh + 1, kv->end());
                Poly P(fld, pc), Q(fld, qc);
                if (Q.is_zero()) continue;
                FE neg = -x0f;
                RatFunc Hx(P.shifted(neg), Q.shifted(neg));
                if (inverted) {
                    if (Hx.is_zero()) continue;
                    Hx = RatFunc(Hx.den(), Hx.num());
                }
                if (Hx.map_degree() != dh) continue;
                if (outer.compose(Hx) == f) {
                    bool dup = false;
                    for (auto& kn : found)
                        if (kn == Hx) dup = true;
                    if (!dup) found.push_back(Hx);
                }
            }
        }
        if (!found.empty()) break;
    }
    return found;
}

std::vector<Decomposition> decompose_covering(const RatFunc& f,
                                              const std::vector<RatFunc>& candidates) {
    std::vector<Decomposition> out;
    int d = f.map_degree();
    for (size_t gi = 0; gi < candidates.size(); ++gi) {
        const RatFunc& g = candidates[gi];
        int dg = g.map_degree();
        if (dg <= 1 || d % dg != 0 || d / dg <= 1) continue;
        for (auto& T : target_permutations(f.field())) {
            RatFunc adjusted = moebius_act(T.inverse(), f, MoebiusSide::Target);
            for (auto& H : solve_inner(g, adjusted)) {
                for (size_t hi = 0; hi < candidates.size(); ++hi) {
                    if (candidates[hi].map_degree() != H.map_degree()) continue;
                    // the frame between the two stages is free, so compare as
                    // coverings up to Moebius on both sides
                    bool eq = false;
                    auto ph = analyze_covering(H);
                    auto pc = analyze_covering(candidates[hi]);
                    if (ph.hurwitz_defect == 0 && pc.hurwitz_defect == 0) {
                        std::array<std::vector<int>, 3> a = ph.pattern.fibers,
                                                        b = pc.pattern.fibers;
                        std::sort(a.begin(), a.end());
                        std::sort(b.begin(), b.end());
                        eq = (a == b);
                    }
                    if (eq) {
                        bool dup = false;
                        for (auto& known : out)
                            if (known.outer_index == gi && known.inner_index == hi) dup = true;
                        if (!dup) out.push_back({gi, hi, H});
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace hpg
