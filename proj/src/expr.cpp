#include "lgq/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace lgq {

namespace {
Expr node(ExprOp op, C v, int ipow, Expr a, Expr b) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->value = v;
    n->ipow = ipow;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}
bool is_const(const Expr& e, C* v = nullptr) {
    if (e->op != ExprOp::CONST) return false;
    if (v) *v = e->value;
    return true;
}
bool is_const_val(const Expr& e, double re, double im) {
    return e->op == ExprOp::CONST && e->value == C{re, im};
}
} // namespace

Expr expr_const(C v) { return node(ExprOp::CONST, v, 0, nullptr, nullptr); }
Expr expr_var() { return node(ExprOp::VAR, {}, 0, nullptr, nullptr); }

Expr eadd(Expr a, Expr b) {
    C x, y;
    if (is_const(a, &x) && is_const(b, &y)) return expr_const(x + y);
    if (is_const_val(a, 0, 0)) return b;
    if (is_const_val(b, 0, 0)) return a;
    return node(ExprOp::ADD, {}, 0, std::move(a), std::move(b));
}
Expr esub(Expr a, Expr b) {
    C x, y;
    if (is_const(a, &x) && is_const(b, &y)) return expr_const(x - y);
    if (is_const_val(b, 0, 0)) return a;
    return node(ExprOp::SUB, {}, 0, std::move(a), std::move(b));
}
Expr emul(Expr a, Expr b) {
    C x, y;
    if (is_const(a, &x) && is_const(b, &y)) return expr_const(x * y);
    if (is_const_val(a, 0, 0) || is_const_val(b, 0, 0)) return expr_const(C{0});
    if (is_const_val(a, 1, 0)) return b;
    if (is_const_val(b, 1, 0)) return a;
    return node(ExprOp::MUL, {}, 0, std::move(a), std::move(b));
}
Expr ediv(Expr a, Expr b) {
    C x, y;
    if (is_const(b, &y) && y == C{0}) throw Error(ErrorCode::PARSE_ERROR, "division by constant zero");
    if (is_const(a, &x) && is_const(b, &y)) return expr_const(x / y);
    if (is_const_val(a, 0, 0)) return expr_const(C{0});
    if (is_const_val(b, 1, 0)) return a;
    return node(ExprOp::DIV, {}, 0, std::move(a), std::move(b));
}
Expr epow(Expr a, int n) {
    if (n == 0) return expr_const(C{1});
    if (n == 1) return a;
    C x;
    if (is_const(a, &x)) return expr_const(std::pow(x, C{(double)n}));
    return node(ExprOp::POW, {}, n, std::move(a), nullptr);
}
Expr eexp(Expr a) {
    C x;
    if (is_const(a, &x)) return expr_const(std::exp(x));
    return node(ExprOp::EXP, {}, 0, std::move(a), nullptr);
}
Expr eneg(Expr a) {
    C x;
    if (is_const(a, &x)) return expr_const(-x);
    return node(ExprOp::NEG, {}, 0, std::move(a), nullptr);
}

C expr_eval(const Expr& e, C z) {
    switch (e->op) {
        case ExprOp::CONST: return e->value;
        case ExprOp::VAR: return z;
        case ExprOp::ADD: return expr_eval(e->a, z) + expr_eval(e->b, z);
        case ExprOp::SUB: return expr_eval(e->a, z) - expr_eval(e->b, z);
        case ExprOp::MUL: return expr_eval(e->a, z) * expr_eval(e->b, z);
        case ExprOp::DIV: return expr_eval(e->a, z) / expr_eval(e->b, z);
        case ExprOp::POW: {
            C base = expr_eval(e->a, z);
            int n = e->ipow;
            bool invert = n < 0;
            unsigned long k = invert ? -(long)n : (long)n;
            C acc{1}, p = base;
            while (k) {
                if (k & 1) acc *= p;
                p *= p;
                k >>= 1;
            }
            return invert ? C{1} / acc : acc;
        }
        case ExprOp::EXP: return std::exp(expr_eval(e->a, z));
        case ExprOp::NEG: return -expr_eval(e->a, z);
    }
    throw Error(ErrorCode::PARSE_ERROR, "corrupt expression node");
}

Expr expr_diff(const Expr& e) {
    switch (e->op) {
        case ExprOp::CONST: return expr_const(C{0});
        case ExprOp::VAR: return expr_const(C{1});
        case ExprOp::ADD: return eadd(expr_diff(e->a), expr_diff(e->b));
        case ExprOp::SUB: return esub(expr_diff(e->a), expr_diff(e->b));
        case ExprOp::MUL:
            return eadd(emul(expr_diff(e->a), e->b), emul(e->a, expr_diff(e->b)));
        case ExprOp::DIV:
            return ediv(esub(emul(expr_diff(e->a), e->b), emul(e->a, expr_diff(e->b))),
                        epow(e->b, 2));
        case ExprOp::POW:
            return emul(emul(expr_const(C{(double)e->ipow}), epow(e->a, e->ipow - 1)),
                        expr_diff(e->a));
        case ExprOp::EXP: return emul(eexp(e->a), expr_diff(e->a));
        case ExprOp::NEG: return eneg(expr_diff(e->a));
    }
    throw Error(ErrorCode::PARSE_ERROR, "corrupt expression node");
}

bool expr_is_const(const Expr& e, C* out) { return is_const(e, out); }

namespace {
void print(std::ostream& os, const Expr& e, int parent_prec) {
    // precedence: add 1, mul 2, unary 3, pow 4, atom 5
    auto wrap = [&](int prec, auto body) {
        if (prec < parent_prec) os << "(";
        body();
        if (prec < parent_prec) os << ")";
    };
    switch (e->op) {
        case ExprOp::CONST: {
            C v = e->value;
            std::ostringstream tmp;
            if (v.imag() == 0) {
                tmp << v.real();
            } else if (v.real() == 0) {
                if (v.imag() == 1)
                    tmp << "i";
                else if (v.imag() == -1)
                    tmp << "-i";
                else
                    tmp << v.imag() << "i";
            } else {
                tmp << "(" << v.real() << (v.imag() >= 0 ? "+" : "-")
                    << std::abs(v.imag()) << "i)";
            }
            std::string s = tmp.str();
            bool neg = !s.empty() && s[0] == '-';
            wrap(neg ? 3 : 5, [&] { os << s; });
            break;
        }
        case ExprOp::VAR: os << "z"; break;
        case ExprOp::ADD:
            wrap(1, [&] { print(os, e->a, 1); os << "+"; print(os, e->b, 2); });
            break;
        case ExprOp::SUB:
            wrap(1, [&] { print(os, e->a, 1); os << "-"; print(os, e->b, 2); });
            break;
        case ExprOp::MUL:
            wrap(2, [&] { print(os, e->a, 2); os << "*"; print(os, e->b, 3); });
            break;
        case ExprOp::DIV:
            wrap(2, [&] { print(os, e->a, 2); os << "/"; print(os, e->b, 3); });
            break;
        case ExprOp::POW:
            wrap(4, [&] {
                print(os, e->a, 5);
                os << "^";
                if (e->ipow < 0) os << "(" << e->ipow << ")";
                else os << e->ipow;
            });
            break;
        case ExprOp::EXP:
            wrap(5, [&] { os << "exp("; print(os, e->a, 0); os << ")"; });
            break;
        case ExprOp::NEG:
            wrap(3, [&] { os << "-"; print(os, e->a, 3); });
            break;
    }
}

struct Parser {
    std::string s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool peek(char c) {
        skip();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw Error(ErrorCode::PARSE_ERROR,
                    what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    Expr parse_expr() {
        Expr lhs = parse_term();
        for (;;) {
            if (eat('+')) lhs = eadd(lhs, parse_term());
            else if (eat('-')) lhs = esub(lhs, parse_term());
            else return lhs;
        }
    }
    Expr parse_term() {
        Expr lhs = parse_factor();
        for (;;) {
            if (eat('*')) lhs = emul(lhs, parse_factor());
            else if (eat('/')) lhs = ediv(lhs, parse_factor());
            else return lhs;
        }
    }
    Expr parse_factor() {
        if (eat('-')) return eneg(parse_factor());
        if (eat('+')) return parse_factor();
        return parse_power();
    }
    Expr parse_power() {
        Expr base = parse_atom();
        if (eat('^')) {
            bool paren = eat('(');
            skip();
            bool neg = eat('-');
            skip();
            if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
                fail("integer exponent expected");
            long n = 0;
            while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
                n = n * 10 + (s[pos++] - '0');
            if (paren && !eat(')')) fail("')' expected after exponent");
            if (n > 64) fail("exponent too large");
            return epow(base, (int)(neg ? -n : n));
        }
        return base;
    }
    Expr parse_atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Expr e = parse_expr();
            if (!eat(')')) fail("')' expected");
            return e;
        }
        if (std::isdigit((unsigned char)c) || c == '.') {
            const char* start = s.c_str() + pos;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) fail("number expected");
            pos += (size_t)(end - start);
            Expr num = expr_const(C{v});
            // juxtaposition: 2i, 2pi, 3z, 3(z+1), 2exp(z)
            if (pos < s.size() &&
                (std::isalpha((unsigned char)s[pos]) || s[pos] == '(')) {
                if (s[pos] == '(') return emul(num, parse_atom());
                return emul(num, parse_power());
            }
            return num;
        }
        if (std::isalpha((unsigned char)c)) {
            size_t start = pos;
            while (pos < s.size() && std::isalnum((unsigned char)s[pos])) ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "i") return expr_const(C{0, 1});
            if (name == "pi") return expr_const(C{M_PI});
            if (name == "e") return expr_const(C{std::exp(1.0)});
            if (name == "z" || name == "w") return expr_var();
            if (name == "exp") {
                if (!eat('(')) fail("'(' expected after exp");
                Expr arg = parse_expr();
                if (!eat(')')) fail("')' expected");
                return eexp(arg);
            }
            fail("unknown identifier '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};
} // namespace

std::string expr_str(const Expr& e) {
    std::ostringstream os;
    os.precision(17);
    print(os, e, 0);
    return os.str();
}

Expr expr_parse(const std::string& text) {
    Parser p;
    p.s = text;
    Expr e = p.parse_expr();
    p.skip();
    if (p.pos != p.s.size()) p.fail("trailing input");
    return e;
}

C parse_complex(const std::string& text) {
    Expr e = expr_parse(text);
    C v;
    if (!expr_is_const(e, &v))
        throw Error(ErrorCode::PARSE_ERROR, "'" + text + "' is not a constant");
    return v;
}

namespace {
/// Winding number of e around the circle |z - z0| = r, or INT_MIN on failure
/// (contour too close to a zero/pole or undersampled).
bool winding_on_circle(const Expr& e, C z0, double r, int* out) {
    int n = 128;
    int prev = 0;
    bool have_prev = false;
    while (n <= 32768) {
        double total = 0;
        double prev_arg = 0;
        bool ok = true;
        double max_step = 0;
        for (int k = 0; k <= n; ++k) {
            double th = 2 * M_PI * k / n;
            C v = expr_eval(e, z0 + std::polar(r, th));
            double m = std::abs(v);
            if (!std::isfinite(m) || m < 1e-280) {
                ok = false;
                break;
            }
            double a = std::arg(v);
            if (k > 0) {
                double d = a - prev_arg;
                while (d > M_PI) d -= 2 * M_PI;
                while (d < -M_PI) d += 2 * M_PI;
                max_step = std::max(max_step, std::abs(d));
                total += d;
            }
            prev_arg = a;
        }
        if (!ok) return false;
        int w = (int)std::lround(total / (2 * M_PI));
        if (max_step < M_PI / 2 && have_prev && w == prev) {
            *out = w;
            return true;
        }
        prev = w;
        have_prev = true;
        n *= 2;
    }
    return false;
}
} // namespace

int order_at(const Expr& e, C z0, double r0) {
    // identically-zero guard
    bool all_zero = true;
    for (int k = 0; k < 8; ++k) {
        C v = expr_eval(e, z0 + std::polar(r0, 2 * M_PI * k / 8));
        if (std::abs(v) > 1e-300) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) throw Error(ErrorCode::DEGENERATE_INPUT, "function vanishes near the point");

    double r = r0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        int w1, w2;
        if (winding_on_circle(e, z0, r, &w1) && winding_on_circle(e, z0, r / 2, &w2) &&
            w1 == w2) {
            return w1;
        }
        r /= 4;
    }
    throw Error(ErrorCode::NOT_ISOLATED, "no stable winding radius around the point");
}

} // namespace lgq
