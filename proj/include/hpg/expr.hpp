#pragma once

#include <map>
#include <memory>
#include <string>

#include "hpg/series.hpp"

namespace hpg {

// Arithmetic expressions over rationals, named symbols (field generator,
// formal parameter, sampled parameters) and optionally the variable x.
// Exponents are integers, or rationals when building radical factors.
struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

Expr parse_expr(const std::string& text);

using SymbolEnv = std::map<std::string, FE>;

FE eval_scalar(const Expr& e, const FieldPtr& f, const SymbolEnv& env);
RatFunc eval_ratfunc(const Expr& e, const FieldPtr& f, const SymbolEnv& env);
// Product of rational powers of polynomials that are units at x = 0.
RadicalExpr eval_radical(const Expr& e, const FieldPtr& f, const SymbolEnv& env);

std::string expr_str(const Expr& e);

}  // namespace hpg
