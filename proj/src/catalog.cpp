#include "lgq/catalog.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace lgq {

namespace {

std::string fmt_d(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string fmt_c(C v) {
    if (v.imag() == 0) return fmt_d(v.real());
    if (v.real() == 0) {
        if (v.imag() == 1) return "i";
        if (v.imag() == -1) return "-i";
        return fmt_d(v.imag()) + "i";
    }
    std::string im = fmt_c(C{0, v.imag()});
    return fmt_d(v.real()) + (im[0] == '-' ? "" : "+") + im;
}

struct Params {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    int geti(const std::string& k, int dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(it->second, &pos);
        } catch (const std::exception&) {
            throw Error(ErrorCode::PARSE_ERROR, "parameter " + k + ": not an integer");
        }
        if (pos != it->second.size())
            throw Error(ErrorCode::PARSE_ERROR, "parameter " + k + ": not an integer");
        return v;
    }
    C getc(const std::string& k, C dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : parse_complex(it->second);
    }
    double getd(const std::string& k, double dflt) const {
        auto it = kv.find(k);
        if (it == kv.end()) return dflt;
        C v = parse_complex(it->second);
        if (std::abs(v.imag()) > 1e-12 * (1 + std::abs(v.real())))
            throw Error(ErrorCode::PARSE_ERROR, "parameter " + k + ": must be real");
        return v.real();
    }
    Expr gete(const std::string& k, const Expr& dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : expr_parse(it->second);
    }
    void restrict_keys(std::initializer_list<const char*> allowed) const {
        for (const auto& item : kv) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || item.first == a;
            if (!ok)
                throw Error(ErrorCode::PARSE_ERROR, "unknown parameter '" + item.first + "'");
        }
    }
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// "base(k=v, k=v)" -> base + params; bare "base" has no params
std::pair<std::string, Params> parse_name(const std::string& raw) {
    // normalize the unicode minus sign to ASCII
    std::string name;
    for (size_t i = 0; i < raw.size(); ++i) {
        if (i + 2 < raw.size() && (unsigned char)raw[i] == 0xE2 &&
            (unsigned char)raw[i + 1] == 0x88 && (unsigned char)raw[i + 2] == 0x92) {
            name += '-';
            i += 2;
        } else {
            name += raw[i];
        }
    }
    size_t open = name.find('(');
    if (open == std::string::npos) return {trim(name), Params{}};
    if (name.back() != ')')
        throw Error(ErrorCode::PARSE_ERROR, "unbalanced parameter list in '" + name + "'");
    std::string base = trim(name.substr(0, open));
    std::string inner = name.substr(open + 1, name.size() - open - 2);
    Params p;
    int depth = 0;
    size_t start = 0;
    auto flush = [&](size_t end) {
        std::string item = trim(inner.substr(start, end - start));
        if (item.empty()) return;
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::PARSE_ERROR, "expected key=value, got '" + item + "'");
        std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
        if (key.empty() || val.empty())
            throw Error(ErrorCode::PARSE_ERROR, "expected key=value, got '" + item + "'");
        if (p.kv.count(key))
            throw Error(ErrorCode::PARSE_ERROR, "duplicate parameter '" + key + "'");
        p.kv[key] = val;
    };
    for (size_t i = 0; i < inner.size(); ++i) {
        char ch = inner[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            flush(i);
            start = i + 1;
        }
    }
    flush(inner.size());
    return {base, p};
}

// numeric residue of expr around center (trapezoid, refined by doubling)
C residue_at(const Expr& e, C center, double radius) {
    return loop_integral(e, expr_const(C{1}), Loop{center, radius}) / C{0, 2 * M_PI};
}

CatalogEntry make_4_34(const Params& p) {
    p.restrict_keys({"n"});
    int n = p.geti("n", 2);
    if (n < 2) throw Error(ErrorCode::PARSE_ERROR, "n must be >= 2");
    const double alpha = M_PI / 3;
    Domain dom = Domain::annulus(0.5, 2.0);
    dom.punctures = {C{0}};
    dom.loops = {Loop{C{0}, 1.0}};
    Expr psi = emul(expr_const(std::polar(1.0, -alpha)), epow(expr_var(), n));
    CatalogEntry e;
    e.data = family_elliptic(psi, expr_const(C{1}), alpha, dom);
    e.name = "ma-wang-wang-4.34(n=" + std::to_string(n) + ")";
    e.data.name = e.name;
    e.has_expected_total_curvature = true;
    e.expected_total_curvature = -4 * M_PI * n;
    e.notes = "Complete graph over a punctured time-like plane; degenerate data of "
              "elliptic type with argument pi/3; phi = (z^n + z^-n, -i(z^n - z^-n), "
              "sqrt(3) i, 1) dz; total curvature -4*pi*n.";
    return e;
}

CatalogEntry make_4_36(const Params& p) {
    p.restrict_keys({"n", "m", "a", "alpha"});
    int n = p.geti("n", 2), m = p.geti("m", 2);
    C a = p.getc("a", C{1});
    double alpha = p.getd("alpha", M_PI / 3);
    if (n < 2 || m < 2) throw Error(ErrorCode::PARSE_ERROR, "n and m must be >= 2");
    if (std::abs(a) == 0) throw Error(ErrorCode::PARSE_ERROR, "a must be nonzero");
    if (!(alpha > 0) || !(alpha < M_PI / 2))
        throw Error(ErrorCode::PARSE_ERROR, "alpha must lie in (0, pi/2)");

    Expr z = expr_var();
    Expr h = ediv(epow(esub(epow(z, n + 1), expr_const(a)), m), epow(z, n));

    double t = std::pow(std::abs(a), 1.0 / (n + 1));
    Domain dom = Domain::annulus(0.2 * t, 3.0 * t);
    dom.punctures = {C{0}};
    std::vector<C> roots;
    for (int j = 0; j <= n; ++j) {
        C r = std::polar(t, (std::arg(a) + 2 * M_PI * j) / (n + 1));
        roots.push_back(r);
        dom.punctures.push_back(r);
    }
    dom.loops = {Loop{C{0}, 0.5 * t}};
    for (const C& r : roots) {
        double d = t; // distance to the origin puncture
        for (const C& q : roots)
            if (q != r) d = std::min(d, std::abs(q - r));
        dom.loops.push_back(Loop{r, 0.25 * d});
    }

    // h and 1/h must both be derivatives of rational functions: every residue
    // of h (pole z = 0) and of 1/h (poles at the roots of z^{n+1} = a) vanishes
    C res = residue_at(h, C{0}, 0.5 * t);
    if (std::abs(res) > 1e-8 * (1 + std::abs(a)))
        throw Error(ErrorCode::FAMILY_PRECONDITION_FAILED,
                    "residue of h at 0 does not vanish");
    Expr hinv = ediv(epow(z, n), epow(esub(epow(z, n + 1), expr_const(a)), m));
    for (size_t j = 0; j < roots.size(); ++j) {
        C r2 = residue_at(hinv, roots[j], dom.loops[j + 1].radius);
        if (std::abs(r2) > 1e-8)
            throw Error(ErrorCode::FAMILY_PRECONDITION_FAILED,
                        "residue of 1/h at a root of z^(n+1) = a does not vanish");
    }

    CatalogEntry e;
    e.data = family_elliptic(h, expr_const(C{1}), alpha, dom);
    e.name = "rational-h-4.36(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
             ",a=" + fmt_c(a) + ",alpha=" + fmt_d(alpha) + ")";
    e.data.name = e.name;
    e.has_expected_total_curvature = true;
    e.expected_total_curvature = -4 * M_PI * m * (n + 1); // -4*pi*deg(h)
    e.notes = "Elliptic-type data psi = h = (z^(n+1) - a)^m / z^n, omega = dz; h and "
              "1/h are derivatives of rational functions (all residues vanish, "
              "checked numerically on construction), so all periods vanish; total "
              "curvature -4*pi*deg(h).";
    return e;
}

CatalogEntry make_4_46(const Params& p) {
    p.restrict_keys({"h", "c"});
    Expr h = p.gete("h", expr_var());
    C c = p.getc("c", C{0, -1});
    if (!(c.imag() < 0))
        throw Error(ErrorCode::FAMILY_PRECONDITION_FAILED, "c must have Im c < 0");
    const C i{0, 1};
    Expr half = expr_const(C{0.5});
    CatalogEntry e;
    e.data.psi1 = ediv(eadd(half, emul(expr_const(i), h)), expr_const(c));
    e.data.psi2 = ediv(esub(half, emul(expr_const(i), h)), expr_const(c));
    e.data.f = expr_const(0.5 * c);
    e.data.domain = Domain::rectangle(-1.5, 1.5, -1.5, 1.5);
    e.name = "parabolic-graph-4.46(h=" + expr_str(h) + ",c=" + fmt_c(c) + ")";
    e.data.name = e.name;
    e.notes = "Entire space-like stationary graph over a light-like plane, "
              "phi = (1/2, h, c/2 - (1/4 + h^2)/(2c), c/2 + (1/4 + h^2)/(2c)) dz "
              "with Im c < 0 and h entire; parabolic type; infinite total curvature "
              "whenever h is nonconstant.";
    return e;
}

CatalogEntry make_4_50(const Params& p) {
    p.restrict_keys({"f", "lambda"});
    Expr psi = p.gete("f", epow(expr_var(), 2));
    C lambda = p.getc("lambda", C{1});
    CatalogEntry e;
    e.data = family_parabolic(psi, expr_const(lambda), Domain::rectangle(-2, 2, -2, 2));
    e.name = "parabolic-poly-4.50(f=" + expr_str(psi) + ",lambda=" + fmt_c(lambda) + ")";
    e.data.name = e.name;
    e.notes = "Algebraic parabolic-type data psi = f(z) (polynomial), dh = lambda dz: "
              "a complete entire graph over a light-like plane; infinite total "
              "curvature when f is nonconstant.";
    return e;
}

CatalogEntry make_4_51(const Params& p) {
    p.restrict_keys({});
    Expr z = expr_var();
    CatalogEntry e;
    e.data = family_parabolic(eexp(z), eexp(eneg(z)), Domain::rectangle(-2, 2, -2, 2));
    e.name = "parabolic-exp-4.51";
    e.data.name = e.name;
    e.notes = "Non-algebraic parabolic-type data psi = e^z, dh = e^-z dz: complete, "
              "but not a graph over a light-like plane (the graph characterization "
              "requires algebraic data).";
    return e;
}

CatalogEntry make_5_38(const Params& p) {
    p.restrict_keys({"m"});
    int m = p.geti("m", 2);
    if (m < 2 || m > 5) throw Error(ErrorCode::PARSE_ERROR, "m must lie in 2..5");
    Expr z = expr_var();
    const Expr one = expr_const(C{1});
    CatalogEntry e;
    e.data.psi1 = z;
    e.data.psi2 = epow(z, -m);
    e.data.f =
        ediv(epow(z, m), emul(epow(esub(epow(z, m - 1), one), 2), epow(esub(z, one), 5 - m)));
    e.data.domain = Domain::annulus(0.1, 3.0);
    e.data.domain.punctures = {C{0}};
    for (int j = 0; j < m - 1; ++j)
        e.data.domain.punctures.push_back(std::polar(1.0, 2 * M_PI * j / (m - 1)));
    e.name = "complete-5.38(m=" + std::to_string(m) + ")";
    e.data.name = e.name;
    e.multivalued_on_base = true;
    e.expected_exceptional_values = m - 1;
    e.notes = "psi1 = z, psi2 = z^-m, dh = z^m dz / ((z^(m-1) - 1)^2 (z - 1)^(5-m)): "
              "complete on the universal cover of the plane punctured at 0 and the "
              "(m-1)-th roots of unity; periods need not vanish on the base, so "
              "integrate with allow_cut (or on a covering).  Shows the degree bound "
              "m <= 5 for complete nonflat data is sharp.";
    return e;
}

CatalogEntry make_5_39(const Params& p) {
    p.restrict_keys({"m", "k", "c1", "c2"});
    int m = p.geti("m", 2), k = p.geti("k", 2);
    if (m < 1) throw Error(ErrorCode::PARSE_ERROR, "m must be >= 1");
    if (k < 1 || k > m + 3) throw Error(ErrorCode::PARSE_ERROR, "k must lie in 1..m+3");
    if (k > 2)
        throw Error(ErrorCode::PARSE_ERROR,
                    "only k <= 2 is supported (punctures are passed as c1, c2)");
    C c1 = p.getc("c1", C{1}), c2 = p.getc("c2", C{-1});
    if (std::abs(c1) == 0 || (k == 2 && (std::abs(c2) == 0 || c1 == c2)))
        throw Error(ErrorCode::PARSE_ERROR, "c1, c2 must be nonzero and distinct");
    Expr z = expr_var();
    Expr den = epow(esub(z, expr_const(c1)), m + 4 - k);
    if (k == 2) den = emul(den, esub(z, expr_const(c2)));
    CatalogEntry e;
    e.data.psi1 = z;
    e.data.psi2 = epow(z, -m);
    e.data.f = ediv(epow(z, m), den);
    e.data.domain = Domain::annulus(0.1, 3.0);
    e.data.domain.punctures = {C{0}, c1};
    if (k == 2) e.data.domain.punctures.push_back(c2);
    e.name = "minimal-5.39(m=" + std::to_string(m) + ",k=" + std::to_string(k) +
             ",c1=" + fmt_c(c1) + (k == 2 ? ",c2=" + fmt_c(c2) : "") + ")";
    e.data.name = e.name;
    e.target = "R4";
    e.multivalued_on_base = true;
    e.expected_exceptional_values = k + 2;
    e.notes = "psi1 = z, psi2 = z^-m, dh = z^m dz / ((z - c1)^(m+4-k) (z - c2) ... ): "
              "complete minimal surface in R^4 (use the dual form) on the universal "
              "cover of the plane punctured at 0, c1, ..., ck; psi1 omits k+2 points "
              "of the extended plane, approaching the m+3 bound.";
    return e;
}

CatalogEntry make_osserman(int which, const Params& p) {
    p.restrict_keys({});
    Expr z = expr_var();
    const Expr one = expr_const(C{1});
    CatalogEntry e;
    e.target = "R4";
    e.data.psi2 = expr_const(C{0});
    if (which == 0) {
        e.data.psi1 = ediv(esub(epow(z, 2), one), z);
        e.data.f = z;
        e.data.domain = Domain::rectangle(-2, 2, -2, 2);
        e.data.domain.punctures = {C{0}};
        e.data.domain.loops = {Loop{C{0}, 1.0}};
        e.name = "osserman-x0-4.1";
        e.expected_exceptional_values = 0;
        e.notes = "psi1 = (z^2 - 1)/z, psi2 = 0, dh = z dz: complete minimal surface "
                  "in R^4 whose Gauss coordinate omits no point of the extended "
                  "plane.  Not usable as a space-like immersion in R^{3,1}: the gap "
                  "|psi2 - conj(psi1)| vanishes at z = +-1.";
    } else if (which == 1) {
        e.data.psi1 = epow(z, -1);
        e.data.f = z;
        e.data.domain = Domain::rectangle(-2, 2, -2, 2);
        e.data.domain.punctures = {C{0}};
        e.data.domain.loops = {Loop{C{0}, 1.0}};
        e.name = "osserman-x1-4.1";
        e.expected_exceptional_values = 1;
        e.notes = "psi1 = 1/z, psi2 = 0, dh = z dz: complete minimal surface in R^4; "
                  "the Gauss coordinate omits exactly one value (0).  The companion "
                  "space-like immersion in R^{3,1} is complete.";
    } else {
        e.data.psi1 = eexp(eneg(z));
        e.data.f = eexp(z);
        e.data.domain = Domain::rectangle(-2, 2, -2, 2);
        e.name = "osserman-x2-4.1";
        e.expected_exceptional_values = 2;
        e.notes = "psi1 = e^-z, psi2 = 0, dh = e^z dz: complete minimal surface in "
                  "R^4; the Gauss coordinate omits exactly two values (0 and "
                  "infinity).  The companion space-like immersion in R^{3,1} is "
                  "complete.";
    }
    e.data.name = e.name;
    return e;
}

} // namespace

CatalogEntry catalog(const std::string& name) {
    auto [base, params] = parse_name(name);
    if (base == "ma-wang-wang-4.34") return make_4_34(params);
    if (base == "rational-h-4.36") return make_4_36(params);
    if (base == "parabolic-graph-4.46") return make_4_46(params);
    if (base == "parabolic-poly-4.50") return make_4_50(params);
    if (base == "parabolic-exp-4.51") return make_4_51(params);
    if (base == "complete-5.38") return make_5_38(params);
    if (base == "minimal-5.39") return make_5_39(params);
    if (base == "osserman-x0-4.1") return make_osserman(0, params);
    if (base == "osserman-x1-4.1") return make_osserman(1, params);
    if (base == "osserman-x2-4.1") return make_osserman(2, params);
    throw Error(ErrorCode::UNKNOWN_EXAMPLE, "no catalog entry named '" + base + "'");
}

std::vector<std::string> catalog_names() {
    return {"ma-wang-wang-4.34", "rational-h-4.36",  "parabolic-graph-4.46",
            "parabolic-poly-4.50", "parabolic-exp-4.51", "complete-5.38",
            "minimal-5.39",        "osserman-x0-4.1",    "osserman-x1-4.1",
            "osserman-x2-4.1"};
}

std::string catalog_manifest() {
    std::ostringstream os;
    struct Row {
        const char* name;
        const char* params;
    };
    const Row rows[] = {
        {"ma-wang-wang-4.34", "n: integer >= 2 (default 2)"},
        {"rational-h-4.36", "n, m: integers >= 2 (default 2); a: nonzero complex "
                            "(default 1); alpha: real in (0, pi/2) (default pi/3)"},
        {"parabolic-graph-4.46", "h: entire expression (default z); c: complex with "
                                 "Im c < 0 (default -i)"},
        {"parabolic-poly-4.50", "f: polynomial expression (default z^2); lambda: "
                                "nonzero complex (default 1)"},
        {"parabolic-exp-4.51", "(no parameters)"},
        {"complete-5.38", "m: integer in 2..5 (default 2)"},
        {"minimal-5.39", "m: integer >= 1 (default 2); k: 1 or 2 (default 2); c1, c2: "
                         "nonzero distinct complex (defaults 1, -1)"},
        {"osserman-x0-4.1", "(no parameters)"},
        {"osserman-x1-4.1", "(no parameters)"},
        {"osserman-x2-4.1", "(no parameters)"},
    };
    for (const Row& r : rows) {
        CatalogEntry e = catalog(r.name);
        os << e.name << "\n";
        os << "  parameters: " << r.params << "\n";
        os << "  psi1 = " << expr_str(e.data.psi1) << "\n";
        os << "  psi2 = " << expr_str(e.data.psi2) << "\n";
        os << "  dh   = (" << expr_str(e.data.f) << ") dz\n";
        const Domain& d = e.data.domain;
        if (d.base == Domain::Base::RECTANGLE)
            os << "  domain: rectangle [" << d.x0 << ", " << d.x1 << "] x [" << d.y0 << ", "
               << d.y1 << "]";
        else
            os << "  domain: annulus " << d.r0 << " <= |z| <= " << d.r1;
        os << ", " << d.punctures.size() << " puncture(s), " << d.loops.size()
           << " test loop(s)\n";
        os << "  target: " << e.target;
        if (e.has_expected_total_curvature)
            os << "; expected total curvature: " << e.expected_total_curvature;
        if (e.expected_exceptional_values >= 0)
            os << "; expected exceptional values: " << e.expected_exceptional_values;
        if (e.multivalued_on_base) os << "; multivalued on the base domain";
        os << "\n  " << e.notes << "\n\n";
    }
    return os.str();
}

} // namespace lgq
