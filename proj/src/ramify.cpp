#include "hpg/ramify.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hpg {

// ----------------------------------------------------------------- AffineForm

std::string AffineForm::str(const std::string& sym) const {
    if (v == 0) return to_string(u);
    std::ostringstream os;
    if (u != 0) os << to_string(u);
    if (v > 0 && u != 0) os << "+";
    if (v == -1)
        os << "-";
    else if (v != 1)
        os << to_string(v);
    os << sym;
    return os.str();
}

AffineForm AffineForm::parse(const std::string& s0, const std::string& sym) {
    std::string s;
    for (char c : s0)
        if (!isspace((unsigned char)c)) s.push_back(c);
    if (s.empty()) fail(ErrorKind::ParseError, "empty affine form");
    AffineForm out;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        if (term.empty()) fail(ErrorKind::ParseError, "bad affine form: " + s0);
        bool has_sym = false;
        std::string frac;  // e.g. "p/3" keeps "/3"
        auto pos = term.find(sym);
        if (pos != std::string::npos) {
            has_sym = true;
            frac = term.substr(pos + sym.size());
            term = term.substr(0, pos);
            if (!term.empty() && term.back() == '*') term.pop_back();
            if (term.empty()) term = "1";
        }
        Rat c = parse_rat(term);
        if (has_sym && !frac.empty()) {
            if (frac[0] != '/') fail(ErrorKind::ParseError, "bad affine term: " + s0);
            c /= parse_rat(frac.substr(1));
        }
        if (sign < 0) c = -c;
        if (has_sym)
            out.v += c;
        else
            out.u += c;
        i = j;
    }
    return out;
}

std::string triple_str(const ExponentTriple& t, const std::string& sym) {
    return "(" + t[0].str(sym) + ", " + t[1].str(sym) + ", " + t[2].str(sym) + ")";
}

ExponentTriple parse_triple(const std::string& s, const std::string& sym) {
    std::string body = s;
    // strip whitespace and outer parentheses
    std::string tmp;
    for (char c : body)
        if (!isspace((unsigned char)c)) tmp.push_back(c);
    body = tmp;
    if (!body.empty() && body.front() == '(') body = body.substr(1);
    if (!body.empty() && body.back() == ')') body.pop_back();
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur.push_back(c);
    }
    parts.push_back(cur);
    if (parts.size() != 3) fail(ErrorKind::ParseError, "exponent triple needs 3 entries: " + s);
    return {AffineForm::parse(parts[0], sym), AffineForm::parse(parts[1], sym),
            AffineForm::parse(parts[2], sym)};
}

// ----------------------------------------------------------- BranchingPattern

int BranchingPattern::part_count() const {
    return (int)(fibers[0].size() + fibers[1].size() + fibers[2].size());
}

bool BranchingPattern::consistent() const {
    for (auto& f : fibers)
        if (std::accumulate(f.begin(), f.end(), 0) != degree) return false;
    return true;
}

bool BranchingPattern::operator==(const BranchingPattern& o) const {
    return degree == o.degree && fibers == o.fibers;
}

std::string BranchingPattern::str() const {
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        if (i) os << "=";
        for (size_t j = 0; j < fibers[i].size(); ++j) {
            if (j) os << "+";
            os << fibers[i][j];
        }
    }
    return os.str();
}

BranchingPattern BranchingPattern::parse(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (!isspace((unsigned char)c)) s.push_back(c);
    BranchingPattern out;
    std::vector<std::string> fib;
    std::string cur;
    for (char c : s) {
        if (c == '=') {
            fib.push_back(cur);
            cur.clear();
        } else
            cur.push_back(c);
    }
    fib.push_back(cur);
    if (fib.size() != 3) fail(ErrorKind::ParseError, "pattern needs 3 fibers: " + s0);
    for (int i = 0; i < 3; ++i) {
        std::string part;
        for (char c : fib[i] + "+") {
            if (c == '+') {
                if (part.empty()) fail(ErrorKind::ParseError, "empty part in pattern: " + s0);
                out.fibers[i].push_back((int)parse_rat(part).get_num().get_si());
                part.clear();
            } else {
                if (!isdigit((unsigned char)c))
                    fail(ErrorKind::ParseError,
                         std::string("bad character '") + c + "' in pattern: " + s0);
                part.push_back(c);
            }
        }
        std::sort(out.fibers[i].begin(), out.fibers[i].end(), std::greater<int>());
    }
    out.degree = std::accumulate(out.fibers[0].begin(), out.fibers[0].end(), 0);
    if (!out.consistent())
        fail(ErrorKind::ParseError, "pattern fibers sum to different degrees: " + s0);
    return out;
}

// --------------------------------------------------------------- ParamPattern

BranchingPattern ParamPattern::instantiate(long n) const {
    BranchingPattern out;
    Rat d = degree.at(Rat(n));
    if (!is_integer(d) || d < 1)
        fail(ErrorKind::InvalidArgument, "non-positive instantiated degree");
    out.degree = (int)d.get_num().get_si();
    for (int i = 0; i < 3; ++i) {
        for (auto& [count, part] : fibers[i]) {
            Rat c = count.at(Rat(n));
            if (!is_integer(c) || c < 0)
                fail(ErrorKind::InvalidArgument, "negative instantiated multiplicity count");
            for (long k = 0; k < c.get_num().get_si(); ++k) out.fibers[i].push_back(part);
        }
        std::sort(out.fibers[i].begin(), out.fibers[i].end(), std::greater<int>());
    }
    if (!out.consistent()) fail(ErrorKind::InvalidArgument, "instantiated pattern inconsistent");
    return out;
}

std::string ParamPattern::str() const {
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        if (i) os << "=";
        bool first = true;
        for (auto& [count, part] : fibers[i]) {
            if (!first) os << "+";
            if (count.is_constant() && count.u == 1) {
                os << part;
            } else if (count.is_constant()) {
                os << to_string(count.u) << "*" << part;
            } else if (count.u == 0) {
                os << (count.v == 1 ? "n" : to_string(count.v) + "n") << "*" << part;
            } else {
                os << "(" << count.str("n") << ")*" << part;
            }
            first = false;
        }
        if (first) os << "0";
    }
    return os.str();
}

ParamPattern ParamPattern::parse(const std::string& s0) {
    std::string s;
    for (char c : s0)
        if (!isspace((unsigned char)c)) s.push_back(c);
    ParamPattern out;
    std::vector<std::string> fib;
    std::string cur;
    for (char c : s) {
        if (c == '=') {
            fib.push_back(cur);
            cur.clear();
        } else
            cur.push_back(c);
    }
    fib.push_back(cur);
    if (fib.size() != 3) fail(ErrorKind::ParseError, "pattern needs 3 fibers: " + s0);
    for (int i = 0; i < 3; ++i) {
        std::vector<std::string> terms;
        std::string t;
        int depth = 0;
        for (char c : fib[i]) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == '+' && depth == 0) {
                terms.push_back(t);
                t.clear();
            } else
                t.push_back(c);
        }
        terms.push_back(t);
        for (auto& term : terms) {
            if (term.empty()) fail(ErrorKind::ParseError, "empty term in pattern: " + s0);
            AffineForm count(Rat(1));
            std::string part = term;
            auto star = term.rfind('*');
            if (star != std::string::npos) {
                std::string cs = term.substr(0, star);
                if (!cs.empty() && cs.front() == '(' && cs.back() == ')')
                    cs = cs.substr(1, cs.size() - 2);
                count = AffineForm::parse(cs, "n");
                part = term.substr(star + 1);
            }
            out.fibers[i].push_back({count, (int)parse_rat(part).get_num().get_si()});
        }
    }
    AffineForm d;
    for (auto& [count, part] : out.fibers[0]) d = d + count * Rat(part);
    out.degree = d;
    for (int i = 1; i < 3; ++i) {
        AffineForm di;
        for (auto& [count, part] : out.fibers[i]) di = di + count * Rat(part);
        if (!(di == d)) fail(ErrorKind::ParseError, "parametric fibers sum differently: " + s0);
    }
    return out;
}

// ------------------------------------------------------------ analyze_covering

RamificationReport analyze_covering(const RatFunc& f) {
    if (f.is_constant()) fail(ErrorKind::InvalidArgument, "cannot analyze a constant map");
    const Poly &num = f.num(), &den = f.den();
    int d = f.map_degree();
    RamificationReport rep;
    rep.pattern.degree = d;

    auto fiber_parts = [&](const Poly& p) {
        std::vector<int> parts;
        if (!p.is_zero() && p.degree() > 0)
            for (auto& [fac, m] : squarefree_decompose(p))
                for (int i = 0; i < fac.degree(); ++i) parts.push_back(m);
        int at_inf = d - (p.is_zero() ? 0 : p.degree());
        if (at_inf > 0) parts.push_back(at_inf);
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        return parts;
    };

    Poly diff = num - den;
    rep.pattern.fibers[0] = fiber_parts(num);
    rep.pattern.fibers[1] = fiber_parts(diff);
    rep.pattern.fibers[2] = fiber_parts(den);
    if (!rep.pattern.consistent())
        fail(ErrorKind::InvalidArgument, "internal: inconsistent fiber data");

    // Critical points away from the marked fibers: roots of the Wronskian
    // numerator that do not lie over 0, 1 or infinity.
    Poly wron = num.derivative() * den - num * den.derivative();
    Poly marked = num * diff * den;
    if (!wron.is_zero() && wron.degree() > 0) {
        for (auto& [fac, m] : squarefree_decompose(wron)) {
            Poly g = gcd(fac, marked);
            Poly away = exact_div(fac, g);
            if (away.degree() > 0) rep.outside.push_back({away, m + 1});
        }
    }
    // The point at infinity lies over the leading-coefficient ratio when the
    // degrees tie; a ratio other than 1 is outside the marked set.
    if (num.degree() == den.degree() && !diff.is_zero() && diff.degree() == num.degree()) {
        FE c = f.eval_at_infinity();
        Poly shifted = num - den * c;
        int ord = d - shifted.degree();
        if (ord > 1) rep.outside.push_back({std::nullopt, ord});
    }

    int defect = 0;
    for (auto& o : rep.outside) defect += (o.order - 1) * (o.locus ? o.locus->degree() : 1);
    rep.hurwitz_defect = rep.pattern.part_count() - (d + 2);
    if (rep.hurwitz_defect != defect)
        fail(ErrorKind::InvalidArgument, "internal: Hurwitz bookkeeping mismatch");
    return rep;
}

std::vector<AffineForm> transform_exponents(const BranchingPattern& p,
                                            const ExponentTriple& below) {
    std::vector<AffineForm> out;
    for (int i = 0; i < 3; ++i)
        for (int m : p.fibers[i]) out.push_back(below[i] * Rat(m));
    return out;
}

std::vector<AffineForm> singular_values(const BranchingPattern& p, const ExponentTriple& below) {
    std::vector<AffineForm> out;
    for (auto& v : transform_exponents(p, below))
        if (!v.is_one()) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

bool degree_formula_holds(const ExponentTriple& below, const ExponentTriple& above, long d) {
    AffineForm lhs = (below[0] + below[1] + below[2] - AffineForm(Rat(1))) * Rat(d);
    AffineForm rhs = above[0] + above[1] + above[2] - AffineForm(Rat(1));
    return lhs == rhs;
}

KleinDegree klein_degree(int k, const ExponentTriple& above) {
    if (k != 3 && k != 4 && k != 5)
        fail(ErrorKind::InvalidArgument, "klein degree defined for k in {3,4,5}");
    for (auto& e : above)
        if (!e.is_constant())
            fail(ErrorKind::InvalidArgument, "klein degree needs a parameter-free triple");
    Rat sum = above[0].u + above[1].u + above[2].u - 1;
    Rat d = Rat(6 * k, 6 - k) * sum;
    d.canonicalize();
    return {d, is_integer(d)};
}

}  // namespace hpg
