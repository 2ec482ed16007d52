#pragma once
/// Symbolic expressions in one complex variable: rational operations plus exp,
/// closed under differentiation.  Small by design — every formula this library
/// works with (powers, rational maps, exponentials and their combinations)
/// lives in this grammar, and the symbolic derivative keeps curvature
/// evaluation free of numeric differentiation.

#include <complex>
#include <memory>
#include <string>

#include "lgq/error.hpp"
#include "lgq/extc.hpp"

namespace lgq {

enum class ExprOp { CONST, VAR, ADD, SUB, MUL, DIV, POW, EXP, NEG };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprOp op;
    C value{};    // CONST
    int ipow = 0; // POW exponent (any integer, negative allowed)
    Expr a, b;    // children (a only for unary ops)
};

Expr expr_const(C v);
Expr expr_var();
Expr eadd(Expr a, Expr b);
Expr esub(Expr a, Expr b);
Expr emul(Expr a, Expr b);
Expr ediv(Expr a, Expr b);
Expr epow(Expr a, int n);
Expr eexp(Expr a);
Expr eneg(Expr a);

/// Plain evaluation; IEEE inf/nan propagate through poles.
C expr_eval(const Expr& e, C z);

/// Symbolic derivative d/dz.
Expr expr_diff(const Expr& e);

/// True when the expression is a constant after folding; writes the value.
bool expr_is_const(const Expr& e, C* out = nullptr);

/// Parseable infix form.
std::string expr_str(const Expr& e);

/// Infix parser.  Grammar: + - * / ^int, exp(...), parentheses, the variable
/// (z or w), numeric literals (strtod), and the constants i, pi, e.  A number
/// directly followed by an identifier or '(' multiplies ("2i", "3z", "2pi").
/// Throws PARSE_ERROR.
Expr expr_parse(const std::string& text);

/// Convenience: parse an expression that must fold to a constant.
C parse_complex(const std::string& text);

/// Zero/pole order of e at z0 via the argument principle: winding of e around
/// a small circle, cross-checked at two radii and refined on disagreement.
/// Positive = zero order, negative = pole order, 0 = regular nonzero.
/// Throws NOT_ISOLATED if no stable radius is found, DEGENERATE_INPUT if the
/// function vanishes identically near z0.
int order_at(const Expr& e, C z0, double r0 = 1e-3);

} // namespace lgq
