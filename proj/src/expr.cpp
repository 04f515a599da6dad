#include "hpg/expr.hpp"

#include <sstream>

namespace hpg {

struct ExprNode {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Pow, Neg } kind;
    Rat number;        // Number
    std::string name;  // Symbol
    Expr lhs, rhs;     // binary ops; Neg uses lhs; Pow keeps the exponent in rhs
};

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip() {
        while (pos < s.size() && isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void die(const std::string& msg) {
        fail(ErrorKind::ParseError, msg + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    Expr make(ExprNode n) { return std::make_shared<ExprNode>(std::move(n)); }

    Expr expr() {
        Expr lhs = term();
        while (true) {
            if (eat('+')) {
                Expr r = term();
                lhs = make({ExprNode::Kind::Add, Rat(), "", lhs, r});
            } else if (eat('-')) {
                Expr r = term();
                lhs = make({ExprNode::Kind::Sub, Rat(), "", lhs, r});
            } else
                return lhs;
        }
    }

    Expr term() {
        Expr lhs = factor();
        while (true) {
            if (eat('*')) {
                Expr r = factor();
                lhs = make({ExprNode::Kind::Mul, Rat(), "", lhs, r});
            } else if (eat('/')) {
                Expr r = factor();
                lhs = make({ExprNode::Kind::Div, Rat(), "", lhs, r});
            } else
                return lhs;
        }
    }

    Expr factor() {
        Expr b = base();
        if (eat('^')) {
            Expr e = base();  // parenthesized expression, number or symbol
            return make({ExprNode::Kind::Pow, Rat(), "", b, e});
        }
        return b;
    }

    Expr base() {
        skip();
        if (eat('(')) {
            Expr e = expr();
            if (!eat(')')) die("expected ')'");
            return e;
        }
        if (eat('-')) {
            Expr e = factor();
            return make({ExprNode::Kind::Neg, Rat(), "", e, nullptr});
        }
        char c = peek();
        if (isdigit((unsigned char)c)) {
            size_t start = pos;
            while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
            return make({ExprNode::Kind::Number, parse_rat(s.substr(start, pos - start)), "",
                         nullptr, nullptr});
        }
        if (isalpha((unsigned char)c) || c == '_') {
            size_t start = pos;
            while (pos < s.size() && (isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
            return make({ExprNode::Kind::Symbol, Rat(), s.substr(start, pos - start), nullptr,
                         nullptr});
        }
        die("unexpected character");
    }
};

}  // namespace

Expr parse_expr(const std::string& text) {
    Parser p(text);
    Expr e = p.expr();
    p.skip();
    if (p.pos != text.size())
        fail(ErrorKind::ParseError, "trailing input in expression '" + text + "'");
    return e;
}

FE eval_scalar(const Expr& e, const FieldPtr& f, const SymbolEnv& env) {
    switch (e->kind) {
        case ExprNode::Kind::Number: return FE::of(f, e->number);
        case ExprNode::Kind::Symbol: {
            auto it = env.find(e->name);
            if (it == env.end())
                fail(ErrorKind::ParseError, "unknown symbol '" + e->name + "'");
            return it->second;
        }
        case ExprNode::Kind::Add: return eval_scalar(e->lhs, f, env) + eval_scalar(e->rhs, f, env);
        case ExprNode::Kind::Sub: return eval_scalar(e->lhs, f, env) - eval_scalar(e->rhs, f, env);
        case ExprNode::Kind::Mul: return eval_scalar(e->lhs, f, env) * eval_scalar(e->rhs, f, env);
        case ExprNode::Kind::Div: return eval_scalar(e->lhs, f, env) / eval_scalar(e->rhs, f, env);
        case ExprNode::Kind::Neg: return -eval_scalar(e->lhs, f, env);
        case ExprNode::Kind::Pow: {
            FE b = eval_scalar(e->lhs, f, env);
            FE ex = eval_scalar(e->rhs, f, env);
            if (ex.is_rational() && is_integer(ex.to_rat()))
                return b.pow(ex.to_rat().get_num().get_si());
            return const_pow(b, ex);
        }
    }
    fail(ErrorKind::ParseError, "bad expression node");
}

RatFunc eval_ratfunc(const Expr& e, const FieldPtr& f, const SymbolEnv& env) {
    switch (e->kind) {
        case ExprNode::Kind::Number: return RatFunc::constant(f, FE::of(f, e->number));
        case ExprNode::Kind::Symbol: {
            if (e->name == "x") return RatFunc::x(f);
            auto it = env.find(e->name);
            if (it == env.end())
                fail(ErrorKind::ParseError, "unknown symbol '" + e->name + "'");
            return RatFunc::constant(f, it->second);
        }
        case ExprNode::Kind::Add:
            return eval_ratfunc(e->lhs, f, env) + eval_ratfunc(e->rhs, f, env);
        case ExprNode::Kind::Sub:
            return eval_ratfunc(e->lhs, f, env) - eval_ratfunc(e->rhs, f, env);
        case ExprNode::Kind::Mul:
            return eval_ratfunc(e->lhs, f, env) * eval_ratfunc(e->rhs, f, env);
        case ExprNode::Kind::Div:
            return eval_ratfunc(e->lhs, f, env) / eval_ratfunc(e->rhs, f, env);
        case ExprNode::Kind::Neg: return -eval_ratfunc(e->lhs, f, env);
        case ExprNode::Kind::Pow: {
            FE ex = eval_scalar(e->rhs, f, env);
            if (!ex.is_rational() || !is_integer(ex.to_rat()))
                fail(ErrorKind::ParseError, "fractional power in a rational function");
            RatFunc b = eval_ratfunc(e->lhs, f, env);
            long k = ex.to_rat().get_num().get_si();
            bool inv = k < 0;
            if (inv) k = -k;
            RatFunc out = RatFunc::constant(f, FE::of(f, 1));
            for (long i = 0; i < k; ++i) out = out * b;
            if (inv) out = RatFunc::constant(f, FE::of(f, 1)) / out;
            return out;
        }
    }
    fail(ErrorKind::ParseError, "bad expression node");
}

namespace {

// Radical factor accumulator: normalize each polynomial base to constant
// term 1 and absorb exact constant powers.
void radical_push(RadicalExpr& acc, const Poly& base, const FE& e) {
    if (base.is_zero()) fail(ErrorKind::InvalidArgument, "zero base in radical");
    if (base.is_constant()) {
        acc.constant = acc.constant * const_pow(base.constant_term(), e);
        return;
    }
    FE c0 = base.constant_term();
    if (c0.is_zero())
        fail(ErrorKind::InvalidArgument, "radical base vanishes at 0: " + base.str());
    acc.constant = acc.constant * const_pow(c0, e);
    acc.factors.push_back({base * c0.inv(), e});
}

void eval_radical_into(const Expr& e, const FieldPtr& f, const SymbolEnv& env, RadicalExpr& acc,
                       const FE& outer_exp) {
    switch (e->kind) {
        case ExprNode::Kind::Mul:
            eval_radical_into(e->lhs, f, env, acc, outer_exp);
            eval_radical_into(e->rhs, f, env, acc, outer_exp);
            return;
        case ExprNode::Kind::Div:
            eval_radical_into(e->lhs, f, env, acc, outer_exp);
            eval_radical_into(e->rhs, f, env, acc, -outer_exp);
            return;
        case ExprNode::Kind::Pow: {
            FE ex = eval_scalar(e->rhs, f, env);
            eval_radical_into(e->lhs, f, env, acc, outer_exp * ex);
            return;
        }
        default: {
            // treat as a rational function base raised to outer_exp
            RatFunc b = eval_ratfunc(e, f, env);
            radical_push(acc, b.num(), outer_exp);
            if (b.den().degree() > 0 || !b.den().lc().is_one())
                radical_push(acc, b.den(), -outer_exp);
            return;
        }
    }
}

}  // namespace

RadicalExpr eval_radical(const Expr& e, const FieldPtr& f, const SymbolEnv& env) {
    RadicalExpr acc = RadicalExpr::one(f);
    eval_radical_into(e, f, env, acc, FE::of(f, 1));
    return acc;
}

std::string expr_str(const Expr& e) {
    std::ostringstream os;
    switch (e->kind) {
        case ExprNode::Kind::Number: os << to_string(e->number); break;
        case ExprNode::Kind::Symbol: os << e->name; break;
        case ExprNode::Kind::Add:
            os << "(" << expr_str(e->lhs) << "+" << expr_str(e->rhs) << ")";
            break;
        case ExprNode::Kind::Sub:
            os << "(" << expr_str(e->lhs) << "-" << expr_str(e->rhs) << ")";
            break;
        case ExprNode::Kind::Mul:
            os << expr_str(e->lhs) << "*" << expr_str(e->rhs);
            break;
        case ExprNode::Kind::Div:
            os << expr_str(e->lhs) << "/" << expr_str(e->rhs);
            break;
        case ExprNode::Kind::Neg: os << "-" << expr_str(e->lhs); break;
        case ExprNode::Kind::Pow:
            os << expr_str(e->lhs) << "^(" << expr_str(e->rhs) << ")";
            break;
    }
    return os.str();
}

}  // namespace hpg
