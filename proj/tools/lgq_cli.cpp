// Command-line front end: classification, the f(w) = conj(w) solver, surface
// generation, W-data validation, and hyperplane area reports.
//
// Exit codes: 0 success, 2 validation failure (report still written),
// 3 parse/config errors.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

#include "lgq/catalog.hpp"
#include "lgq/io.hpp"

using namespace lgq;

namespace {

struct Common {
    double tol = -1; // negative: per-operation default
    std::string format;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
    c.format = default_format;
    cmd->add_option("--tol", c.tol, "tolerance override for classification decisions");
    cmd->add_option("--format", c.format, "output format (json" +
                        std::string(default_format == "obj" ? ", csv, obj" : "") + ")");
    cmd->add_option("--out", c.out, "output path (default: stdout; gen-surface: basename)");
}

void emit(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_text_file(out, j.dump(2) + "\n");
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (seps.find(ch) != std::string::npos) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<C> parse_clist(const std::string& s) {
    std::vector<C> out;
    for (const std::string& tok : split(s, " ,;")) out.push_back(parse_complex(tok));
    return out;
}

double parse_real(const std::string& s, const char* what) {
    C v = parse_complex(s);
    if (std::abs(v.imag()) > 1e-12 * (1 + std::abs(v.real())))
        throw Error(ErrorCode::PARSE_ERROR, std::string(what) + " must be real: " + s);
    return v.real();
}

std::vector<Loop> parse_loops(const std::string& s) {
    std::vector<Loop> out;
    for (const std::string& tok : split(s, ";")) {
        size_t colon = tok.rfind(':');
        if (colon == std::string::npos)
            throw Error(ErrorCode::PARSE_ERROR, "loop must be center:radius, got " + tok);
        Loop l;
        l.center = parse_complex(tok.substr(0, colon));
        l.radius = parse_real(tok.substr(colon + 1), "loop radius");
        if (l.radius <= 0) throw Error(ErrorCode::PARSE_ERROR, "loop radius must be positive");
        out.push_back(l);
    }
    return out;
}

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    if (std::sscanf(s.c_str(), "%dx%d", &g.nu, &g.nv) != 2 || g.nu < 2 || g.nv < 2)
        throw Error(ErrorCode::PARSE_ERROR, "grid must be NxM with N,M >= 2, got " + s);
    return g;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::PARSE_ERROR:
        case ErrorCode::UNKNOWN_EXAMPLE:
        case ErrorCode::DEGENERATE_INPUT:
        case ErrorCode::NONCOPRIME:
        case ErrorCode::OUT_OF_DOMAIN:
            return 3;
        default:
            return 2;
    }
}

void require_json(const Common& c, const char* cmd) {
    if (c.format != "json")
        throw Error(ErrorCode::PARSE_ERROR,
                    std::string(cmd) + " only supports --format json, got " + c.format);
}

// ---------------------------------------------------------------- subcommands

int run_classify_matrix(const std::vector<std::string>& entries, const Common& c) {
    require_json(c, "classify-matrix");
    C a = parse_complex(entries[0]), b = parse_complex(entries[1]);
    C cc = parse_complex(entries[2]), d = parse_complex(entries[3]);
    C det = a * d - b * cc;
    if (std::abs(det - C{1, 0}) > 1e-6)
        std::cerr << "note: determinant " << det.real() << (det.imag() < 0 ? "-" : "+")
                  << std::abs(det.imag()) << "i renormalized to 1\n";
    MobiusMat S(a, b, cc, d);
    ConjClass cls = conj_canonical(S);
    EFixSet es = c.tol > 0 ? e_set(S, c.tol) : e_set(S);
    SymmetryAlgebra alg = symmetry_algebra(S);
    json out{{"class", to_json(cls)},
             {"e_set", to_json(es)},
             {"symmetry_algebra_dim", alg.dim}};
    emit(out, c.out);
    return 0;
}

int run_classify_hyperplane(const std::vector<std::string>& entries, const Common& c) {
    require_json(c, "classify-hyperplane");
    CVec4 A(parse_complex(entries[0]), parse_complex(entries[1]), parse_complex(entries[2]),
            parse_complex(entries[3]));
    HyperplaneClass cls = c.tol > 0 ? classify_A(A, c.tol) : classify_A(A);
    json out{{"class", to_json(cls)}};
    bool off_quadric = cls.tag != HypTag::IN_Q_PLUS && cls.tag != HypTag::IN_Q_NULLBOUNDARY;
    if (off_quadric) {
        try {
            MobiusMat S = mobius_from_A(A);
            out["mobius"] = json{{"a", to_json(S.a)},
                                 {"b", to_json(S.b)},
                                 {"c", to_json(S.c)},
                                 {"d", to_json(S.d)}};
            out["symmetry_algebra_dim"] = symmetry_algebra(S).dim;
        } catch (const Error&) {
            // null pole: no graph matrix
        }
    }
    emit(out, c.out);
    return 0;
}

int run_solve_ef(const std::string& Ps, const std::string& Qs, const Common& c) {
    require_json(c, "solve-ef");
    RationalFn f(parse_clist(Ps), parse_clist(Qs));
    EfResult ef = solve_Ef(f);
    json out{{"result", to_json(ef)}, {"bounds", to_json(bounds_report(f, ef))}};
    emit(out, c.out);
    return 0;
}

int run_hyperplane_area(const std::string& case_name, const std::string& param_s, int kmax,
                        const Common& c) {
    require_json(c, "hyperplane-area");
    MetricCase mc;
    std::string n = case_name;
    if (n.rfind("CASE_", 0) == 0) n = n.substr(5);
    if (n == "I" || n == "1")
        mc = MetricCase::CASE_I;
    else if (n == "II" || n == "2")
        mc = MetricCase::CASE_II;
    else if (n == "III" || n == "3")
        mc = MetricCase::CASE_III;
    else if (n == "IV" || n == "4")
        mc = MetricCase::CASE_IV;
    else if (n == "V" || n == "5")
        mc = MetricCase::CASE_V;
    else
        throw Error(ErrorCode::PARSE_ERROR, "unknown metric case: " + case_name);
    double param = param_s.empty() ? 0.0 : parse_real(param_s, "--param");
    AreaResult area = hyperplane_total_area(mc, param, kmax);
    emit(to_json(area), c.out);
    return 0;
}

struct WDataFlags {
    std::string psi1, psi2, f_expr, psi, g_expr, catalog_name;
    std::string n, m, k, a, alpha, u, lambda, h, cval, c1, c2;
    std::vector<double> rect, annulus;
    std::string punctures, loops;
};

void apply_domain_overrides(WData& w, const WDataFlags& fl) {
    if (!fl.rect.empty() && !fl.annulus.empty())
        throw Error(ErrorCode::PARSE_ERROR, "--rect and --annulus are mutually exclusive");
    if (!fl.rect.empty()) {
        Domain d = Domain::rectangle(fl.rect[0], fl.rect[1], fl.rect[2], fl.rect[3]);
        d.punctures = w.domain.punctures;
        d.loops = w.domain.loops;
        w.domain = d;
    } else if (!fl.annulus.empty()) {
        if (!(fl.annulus[0] > 0 && fl.annulus[1] > fl.annulus[0]))
            throw Error(ErrorCode::PARSE_ERROR, "--annulus needs 0 < r0 < r1");
        Domain d = Domain::annulus(fl.annulus[0], fl.annulus[1]);
        d.punctures = w.domain.punctures;
        d.loops = w.domain.loops;
        w.domain = d;
    }
    if (!fl.punctures.empty())
        for (C p : parse_clist(fl.punctures)) w.domain.punctures.push_back(p);
    if (!fl.loops.empty())
        for (const Loop& l : parse_loops(fl.loops)) w.domain.loops.push_back(l);
}

WData wdata_from_catalog(const std::string& name, const WDataFlags& fl, CatalogEntry* entry_out) {
    std::string full = name;
    if (name.find('(') == std::string::npos) {
        std::vector<std::pair<std::string, std::string>> kv;
        auto put = [&](const char* key, const std::string& v) {
            if (!v.empty()) kv.push_back({key, v});
        };
        put("n", fl.n);
        put("m", fl.m);
        put("k", fl.k);
        put("a", fl.a);
        put("alpha", fl.alpha);
        put("lambda", fl.lambda);
        put("h", fl.h);
        put("c", fl.cval);
        put("c1", fl.c1);
        put("c2", fl.c2);
        put("f", fl.f_expr);
        if (!kv.empty()) {
            full += "(";
            for (size_t i = 0; i < kv.size(); ++i)
                full += (i ? "," : "") + kv[i].first + "=" + kv[i].second;
            full += ")";
        }
    }
    CatalogEntry entry = catalog(full);
    if (entry_out) *entry_out = entry;
    WData w = entry.data;
    apply_domain_overrides(w, fl);
    return w;
}

WData wdata_from_family(const std::string& kind, const WDataFlags& fl) {
    Domain dom = Domain::rectangle(-2, 2, -2, 2);
    if (!fl.annulus.empty()) {
        if (!(fl.annulus[0] > 0 && fl.annulus[1] > fl.annulus[0]))
            throw Error(ErrorCode::PARSE_ERROR, "--annulus needs 0 < r0 < r1");
        dom = Domain::annulus(fl.annulus[0], fl.annulus[1]);
    } else if (!fl.rect.empty()) {
        dom = Domain::rectangle(fl.rect[0], fl.rect[1], fl.rect[2], fl.rect[3]);
    }
    if (!fl.punctures.empty())
        for (C p : parse_clist(fl.punctures)) dom.punctures.push_back(p);
    if (!fl.loops.empty())
        for (const Loop& l : parse_loops(fl.loops)) dom.loops.push_back(l);

    if (fl.psi.empty())
        throw Error(ErrorCode::PARSE_ERROR, "family " + kind + " needs --psi");
    Expr psi = expr_parse(fl.psi);
    if (kind == "hyperbolic") {
        if (fl.u.empty()) throw Error(ErrorCode::PARSE_ERROR, "family hyperbolic needs --u");
        Expr f = expr_parse(fl.f_expr.empty() ? "1" : fl.f_expr);
        return family_hyperbolic(psi, f, parse_real(fl.u, "--u"), dom);
    }
    if (kind == "elliptic") {
        if (fl.alpha.empty()) throw Error(ErrorCode::PARSE_ERROR, "family elliptic needs --alpha");
        Expr g = expr_parse(fl.g_expr.empty() ? "1" : fl.g_expr);
        return family_elliptic(psi, g, parse_real(fl.alpha, "--alpha"), dom);
    }
    if (kind == "parabolic") {
        Expr f = expr_parse(fl.f_expr.empty() ? "1" : fl.f_expr);
        return family_parabolic(psi, f, dom);
    }
    throw Error(ErrorCode::PARSE_ERROR,
                "unknown family (want hyperbolic|elliptic|parabolic): " + kind);
}

WData wdata_from_exprs(const WDataFlags& fl) {
    if (fl.psi1.empty() || fl.psi2.empty())
        throw Error(ErrorCode::PARSE_ERROR, "need --psi1 and --psi2 (or --catalog)");
    WData w;
    w.psi1 = expr_parse(fl.psi1);
    w.psi2 = expr_parse(fl.psi2);
    w.f = expr_parse(fl.f_expr.empty() ? "1" : fl.f_expr);
    w.name = "custom";
    w.domain = Domain::rectangle(-1, 1, -1, 1);
    apply_domain_overrides(w, fl);
    return w;
}

int run_validate_wdata(const WDataFlags& fl, int grid, const Common& c) {
    require_json(c, "validate-wdata");
    WData w;
    if (!fl.catalog_name.empty())
        w = wdata_from_catalog(fl.catalog_name, fl, nullptr);
    else
        w = wdata_from_exprs(fl);
    WReport rep = wdata_validate(w, grid);
    json out{{"name", w.name}, {"report", to_json(rep)}};
    emit(out, c.out);
    return rep.all_ok ? 0 : 2;
}

json k_stats(const SurfaceMesh& mesh) {
    double kmin = std::numeric_limits<double>::infinity(), kmax = -kmin, sum = 0;
    long n = 0;
    for (size_t i = 0; i < mesh.K.size(); ++i) {
        if (!mesh.valid[i] || !std::isfinite(mesh.K[i])) continue;
        kmin = std::min(kmin, mesh.K[i]);
        kmax = std::max(kmax, mesh.K[i]);
        sum += mesh.K[i];
        ++n;
    }
    if (n == 0) return json{{"count", 0}};
    return json{{"count", n}, {"min", jnum(kmin)}, {"max", jnum(kmax)}, {"mean", jnum(sum / n)}};
}

double max_null_residual(const WData& w, const SurfaceMesh& mesh) {
    double worst = 0;
    for (size_t i = 0; i < mesh.params.size(); ++i) {
        if (!mesh.valid[i]) continue;
        CVec4 phi;
        try {
            phi = phi_from_wdata(w, mesh.params[i]);
        } catch (const Error&) {
            continue;
        }
        C null = phi[0] * phi[0] + phi[1] * phi[1] + phi[2] * phi[2] - phi[3] * phi[3];
        double scale = std::norm(phi[0]) + std::norm(phi[1]) + std::norm(phi[2]) +
                       std::norm(phi[3]);
        if (scale > 0) worst = std::max(worst, std::abs(null) / scale);
    }
    return worst;
}

int run_gen_surface(const std::string& source, const std::string& name, const WDataFlags& fl,
                    const std::string& grid_s, bool allow_cut, bool dual, int exhaustion,
                    const Common& c) {
    if (c.format != "obj" && c.format != "csv")
        throw Error(ErrorCode::PARSE_ERROR,
                    "gen-surface supports --format obj|csv, got " + c.format);
    GridSpec grid = parse_grid(grid_s);
    CatalogEntry entry;
    WData w;
    bool from_catalog = false;
    if (source == "catalog") {
        w = wdata_from_catalog(name, fl, &entry);
        from_catalog = true;
    } else if (source == "family") {
        w = wdata_from_family(name, fl);
    } else {
        throw Error(ErrorCode::PARSE_ERROR, "source must be catalog|family, got " + source);
    }

    std::string base = c.out.empty() ? std::string("surface") : c.out;
    json side{{"name", w.name}, {"grid", json::array({grid.nu, grid.nv})}, {"dual", dual}};
    if (from_catalog) {
        side["target"] = entry.target;
        if (entry.has_expected_total_curvature)
            side["expected_total_curvature"] = jnum(entry.expected_total_curvature);
        if (!entry.notes.empty()) side["notes"] = entry.notes;
    }
    side["validation"] = to_json(wdata_validate(w));

    SurfaceMesh mesh;
    try {
        mesh = integrate_surface(w, grid, Vec4{0, 0, 0, 0}, allow_cut, dual);
    } catch (const Error& e) {
        side["error"] = e.what();
        write_text_file(base + ".json", side.dump(2) + "\n");
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }

    int valid_count = 0;
    for (std::uint8_t v : mesh.valid) valid_count += v;
    side["vertices"] = valid_count;
    side["faces"] = (json::number_integer_t)mesh.faces.size();
    side["multivalued"] = mesh.multivalued;
    side["max_null_residual"] = jnum(max_null_residual(w, mesh));
    side["K_stats"] = k_stats(mesh);
    if (exhaustion > 0) side["total_curvature"] = to_json(total_curvature(w, exhaustion));

    if (c.format == "obj")
        write_obj(mesh, base + ".obj");
    else
        write_csv(mesh, base + ".csv");
    write_text_file(base + ".json", side.dump(2) + "\n");
    std::cout << base << "." << c.format << " + " << base << ".json written ("
              << valid_count << " vertices, " << mesh.faces.size() << " faces)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stationary-surface toolkit: orbit classification, the f(w) = conj(w) "
                 "solver, and Weierstrass-type surface generation"};
    app.set_help_flag("--help", "print help"); // keep --h free for the catalog parameter
    app.set_help_all_flag("--help-all", "print help for all subcommands");
    app.require_subcommand(1);

    // classify-matrix
    auto* cm = app.add_subcommand("classify-matrix",
                                  "canonical form of S in SL(2,C) under S ~ ±conj(T) S T^{-1}");
    std::vector<std::string> cm_entries;
    Common cm_common;
    cm->add_option("entries", cm_entries, "matrix entries a b c d (complex)")
        ->expected(4)
        ->required();
    add_common(cm, cm_common, "json");

    // classify-hyperplane
    auto* ch = app.add_subcommand("classify-hyperplane",
                                  "orbit classification of a hyperplane pole [A]");
    std::vector<std::string> ch_entries;
    Common ch_common;
    ch->add_option("entries", ch_entries, "pole entries a1 a2 a3 a4 (complex)")
        ->expected(4)
        ->required();
    add_common(ch, ch_common, "json");

    // solve-ef
    auto* se = app.add_subcommand("solve-ef", "certified solution set of f(w) = conj(w)");
    std::string se_P, se_Q;
    Common se_common;
    se->add_option("--P", se_P, "numerator coefficients, ascending (complex list)")->required();
    se->add_option("--Q", se_Q, "denominator coefficients, ascending (complex list)")
        ->required();
    add_common(se, se_common, "json");

    // hyperplane-area
    auto* ha = app.add_subcommand("hyperplane-area",
                                  "total area of a canonical hyperplane metric by exhaustion");
    std::string ha_case, ha_param;
    int ha_kmax = 8;
    Common ha_common;
    ha->add_option("case", ha_case, "metric case: I, II, III, IV or V")->required();
    ha->add_option("--param", ha_param, "u for case III, alpha for case IV");
    ha->add_option("--exhaustion", ha_kmax, "number of exhaustion stages (default 8)");
    add_common(ha, ha_common, "json");

    // validate-wdata
    auto* vw = app.add_subcommand("validate-wdata",
                                  "degenerate-gap, zero/pole and loop-period checks");
    WDataFlags vw_fl;
    int vw_grid = 40;
    Common vw_common;
    vw->add_option("--catalog", vw_fl.catalog_name, "validate a catalog entry by name");
    vw->add_option("--psi1", vw_fl.psi1, "psi1 expression in z");
    vw->add_option("--psi2", vw_fl.psi2, "psi2 expression in z");
    vw->add_option("--f", vw_fl.f_expr, "dh = f dz expression (default 1)");
    vw->add_option("--rect", vw_fl.rect, "domain rectangle x0 x1 y0 y1")->expected(4);
    vw->add_option("--annulus", vw_fl.annulus, "domain annulus r0 r1")->expected(2);
    vw->add_option("--punctures", vw_fl.punctures, "punctures, ';'-separated complex");
    vw->add_option("--loops", vw_fl.loops, "loops center:radius, ';'-separated");
    vw->add_option("--grid", vw_grid, "sampling grid (default 40)");
    add_common(vw, vw_common, "json");

    // gen-surface
    auto* gs = app.add_subcommand("gen-surface",
                                  "integrate a surface mesh and write OBJ/CSV + JSON sidecar");
    gs->set_help_flag("--help", "print help"); // keep --h free for the catalog parameter
    std::string gs_source, gs_name, gs_grid = "64x64";
    WDataFlags gs_fl;
    bool gs_allow_cut = false, gs_dual = false;
    int gs_exhaustion = 0;
    Common gs_common;
    gs->add_option("source", gs_source, "catalog | family")->required();
    gs->add_option("name", gs_name, "catalog entry name, or hyperbolic|elliptic|parabolic")
        ->required();
    gs->add_option("--n", gs_fl.n, "catalog parameter n");
    gs->add_option("--m", gs_fl.m, "catalog parameter m");
    gs->add_option("--k", gs_fl.k, "catalog parameter k");
    gs->add_option("--a", gs_fl.a, "catalog parameter a (complex)");
    gs->add_option("--alpha", gs_fl.alpha, "angle parameter (family elliptic / catalog)");
    gs->add_option("--u", gs_fl.u, "family hyperbolic parameter u > 0");
    gs->add_option("--lambda", gs_fl.lambda, "catalog parameter lambda");
    gs->add_option("--h", gs_fl.h, "catalog parameter h (expression)");
    gs->add_option("--c", gs_fl.cval, "catalog parameter c (complex)");
    gs->add_option("--c1", gs_fl.c1, "catalog parameter c1 (complex)");
    gs->add_option("--c2", gs_fl.c2, "catalog parameter c2 (complex)");
    gs->add_option("--psi", gs_fl.psi, "family psi expression in z");
    gs->add_option("--f", gs_fl.f_expr, "family f expression / catalog parameter f");
    gs->add_option("--g", gs_fl.g_expr, "family elliptic omega = g dz expression");
    gs->add_option("--grid", gs_grid, "mesh resolution NxM (default 64x64)");
    gs->add_option("--rect", gs_fl.rect, "override domain rectangle x0 x1 y0 y1")->expected(4);
    gs->add_option("--annulus", gs_fl.annulus, "override domain annulus r0 r1")->expected(2);
    gs->add_option("--punctures", gs_fl.punctures, "extra punctures, ';'-separated complex");
    gs->add_option("--loops", gs_fl.loops, "extra loops center:radius, ';'-separated");
    gs->add_flag("--allow-cut", gs_allow_cut,
                 "integrate across nonzero periods (marks mesh multivalued)");
    gs->add_flag("--dual", gs_dual, "integrate the dual minimal immersion in R^4");
    gs->add_option("--exhaustion", gs_exhaustion,
                   "also report total curvature over k exhaustion stages");
    add_common(gs, gs_common, "obj");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // keep --help and --version at exit 0; fold every real parse error
        // into the config-error code
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (cm->parsed()) return run_classify_matrix(cm_entries, cm_common);
        if (ch->parsed()) return run_classify_hyperplane(ch_entries, ch_common);
        if (se->parsed()) return run_solve_ef(se_P, se_Q, se_common);
        if (ha->parsed()) return run_hyperplane_area(ha_case, ha_param, ha_kmax, ha_common);
        if (vw->parsed()) return run_validate_wdata(vw_fl, vw_grid, vw_common);
        if (gs->parsed())
            return run_gen_surface(gs_source, gs_name, gs_fl, gs_grid, gs_allow_cut, gs_dual,
                                   gs_exhaustion, gs_common);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}
