#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lgq/catalog.hpp"
#include "lgq/surface.hpp"

using namespace lgq;

namespace {
constexpr double PI = 3.14159265358979323846;
}

TEST_CASE("registry names and manifest") {
    auto names = catalog_names();
    CHECK(names.size() == 10);
    std::string man = catalog_manifest();
    for (const auto& n : names) {
        CHECK(man.find(n) != std::string::npos);
        CHECK_NOTHROW(catalog(n));
    }
}

TEST_CASE("catalog lookup errors") {
    CHECK_THROWS_WITH_AS(catalog("nope-1.1"), doctest::Contains("UNKNOWN_EXAMPLE"), Error);
    CHECK_THROWS_WITH_AS(catalog("ma-wang-wang-4.34(n="), doctest::Contains("PARSE_ERROR"),
                         Error);
    CHECK_THROWS_WITH_AS(catalog("ma-wang-wang-4.34(q=2)"), doctest::Contains("PARSE_ERROR"),
                         Error);
    CHECK_THROWS_WITH_AS(catalog("ma-wang-wang-4.34(n=2,n=3)"),
                         doctest::Contains("PARSE_ERROR"), Error);
    CHECK_THROWS_WITH_AS(catalog("ma-wang-wang-4.34(n=1)"), doctest::Contains("PARSE_ERROR"),
                         Error);
}

TEST_CASE("punctured-plane graph entry matches its elliptic family build") {
    CatalogEntry e = catalog("ma-wang-wang-4.34(n=2)");
    CHECK(e.name == "ma-wang-wang-4.34(n=2)");
    CHECK(e.target == "R3,1");
    REQUIRE(e.has_expected_total_curvature);
    CHECK(testutil::close(e.expected_total_curvature, -8 * PI, 1e-9));

    double al = PI / 3;
    Expr psi = emul(expr_const(std::polar(1.0, -al)), epow(expr_var(), 2));
    WData fam = family_elliptic(psi, expr_const(C{1, 0}), al, e.data.domain);
    for (int trial = 0; trial < 10; ++trial) {
        C z = std::polar(testutil::uniform(0.6, 1.9), testutil::uniform(0.0, 2 * PI));
        CHECK(std::abs(expr_eval(e.data.psi1, z) - expr_eval(fam.psi1, z)) < 1e-13);
        CHECK(std::abs(expr_eval(e.data.psi2, z) - expr_eval(fam.psi2, z)) < 1e-13);
        CHECK(std::abs(expr_eval(e.data.f, z) - expr_eval(fam.f, z)) < 1e-13);
    }

    // the dz-coefficient vector at z = 1 is (2, 0, sqrt(3) i, 1)
    CVec4 phi = phi_from_wdata(e.data, C{1, 0});
    CHECK(std::abs(phi[0] - C{2, 0}) < 1e-14);
    CHECK(std::abs(phi[1]) < 1e-14);
    CHECK(std::abs(phi[2] - C{0, std::sqrt(3.0)}) < 1e-14);
    CHECK(std::abs(phi[3] - C{1, 0}) < 1e-14);
}

TEST_CASE("mesh of the punctured graph: last two coordinates are affine in z") {
    // phi3 = sqrt(3) i, phi4 = 1 identically, so x3 = -sqrt(3) Im z + const and
    // x4 = Re z + const; the (x3, x4)-projection is injective (a graph).
    CatalogEntry e = catalog("ma-wang-wang-4.34(n=2)");
    SurfaceMesh mesh = integrate_surface(e.data, {24, 24});
    CHECK(!mesh.multivalued);
    CHECK(!mesh.dual);
    CHECK(mesh.nu == 24);
    CHECK(mesh.nv == 24);
    CHECK(!mesh.faces.empty());

    int i0 = -1;
    for (int i = 0; i < (int)mesh.valid.size(); ++i)
        if (mesh.valid[i]) { i0 = i; break; }
    REQUIRE(i0 >= 0);
    C z0 = mesh.params[i0];
    const Vec4& p0 = mesh.pos[i0];
    int checked = 0;
    for (int i = 0; i < (int)mesh.valid.size(); ++i) {
        if (!mesh.valid[i]) continue;
        C dz = mesh.params[i] - z0;
        CHECK(testutil::close(mesh.pos[i][2] - p0[2], -std::sqrt(3.0) * dz.imag(), 1e-8));
        CHECK(testutil::close(mesh.pos[i][3] - p0[3], dz.real(), 1e-8));
        // negative curvature everywhere on this entry
        if (std::isfinite(mesh.K[i])) {
            CHECK(mesh.K[i] < 0);
            CHECK(mesh.K[i] > -2.0);
        }
        ++checked;
    }
    CHECK(checked > 400);
}

TEST_CASE("flat parameter choice gives an affine mesh with zero curvature") {
    CatalogEntry e = catalog("parabolic-graph-4.46(h=0)");
    SurfaceMesh mesh = integrate_surface(e.data, {12, 12});
    // phi is constant: positions are affine in z, so second differences along
    // each row vanish and K = 0 everywhere
    for (int r = 0; r < mesh.nu; ++r) {
        for (int c = 0; c + 2 < mesh.nv; ++c) {
            int i = r * mesh.nv + c;
            if (!(mesh.valid[i] && mesh.valid[i + 1] && mesh.valid[i + 2])) continue;
            for (int k = 0; k < 4; ++k) {
                double second =
                    mesh.pos[i + 2][k] - 2 * mesh.pos[i + 1][k] + mesh.pos[i][k];
                CHECK(std::abs(second) < 1e-9);
            }
        }
    }
    for (int i = 0; i < (int)mesh.valid.size(); ++i)
        if (mesh.valid[i]) CHECK(std::abs(mesh.K[i]) < 1e-12);

    TotalCurvature tc = total_curvature(e.data, 4);
    CHECK(tc.verdict == TotalCurvature::Verdict::FINITE);
    CHECK(std::abs(tc.value) < 1e-9);
}

TEST_CASE("total curvature of the punctured graphs hits -4 pi n") {
    for (int n : {2, 3}) {
        CatalogEntry e = catalog("ma-wang-wang-4.34(n=" + std::to_string(n) + ")");
        TotalCurvature tc = total_curvature(e.data);
        CHECK(tc.verdict == TotalCurvature::Verdict::FINITE);
        CHECK(testutil::close_rel(tc.value, -4 * PI * n, 1e-6));
        REQUIRE(tc.stages.size() >= 2);
        double last = std::abs(tc.stages.back() - (-4 * PI * n));
        double first = std::abs(tc.stages.front() - (-4 * PI * n));
        CHECK(last < first); // exhaustion actually converges
    }
}

TEST_CASE("nonconstant light-like graphs have divergent total curvature") {
    CatalogEntry e = catalog("parabolic-graph-4.46");
    TotalCurvature tc = total_curvature(e.data, 5);
    CHECK(tc.verdict == TotalCurvature::Verdict::DIVERGES);
    REQUIRE(tc.unsigned_stages.size() == 5);
    CHECK(tc.unsigned_stages.back() > 2 * tc.unsigned_stages.front());
}

TEST_CASE("dual immersion: null residuals and metric domination") {
    CatalogEntry e = catalog("ma-wang-wang-4.34(n=2)");
    DualResult d = dual_immersion(e.data, {16, 16});
    CHECK(d.mesh.dual);
    CHECK(d.max_null_resid < 1e-12);
    CHECK(d.min_domination > -1e-12);
    CHECK(d.min_domination < 1e-12);

    for (int trial = 0; trial < 20; ++trial) {
        C z = std::polar(testutil::uniform(0.6, 1.9), testutil::uniform(0.0, 2 * PI));
        CVec4 ph = phi_from_wdata(e.data, z);
        CVec4 phd = phi_dual(e.data, z);
        CHECK(std::abs(phd[0] - ph[0]) < 1e-15);
        CHECK(std::abs(phd[3] - C{0, 1} * ph[3]) < 1e-15);
        // sum of squares of the dual coefficients vanishes (euclidean null)
        C nr = phd[0] * phd[0] + phd[1] * phd[1] + phd[2] * phd[2] + phd[3] * phd[3];
        CHECK(std::abs(nr) < 1e-12 * cnorm2(phd));
        double ds2 = metric_ds2(e.data, z);
        double dual2 = dual_metric_ds2(e.data, z);
        CHECK(testutil::close_rel(dual2, ds2 + 2 * std::norm(ph[3]), 1e-12));
        C p1 = expr_eval(e.data.psi1, z), p2 = expr_eval(e.data.psi2, z);
        double fv = std::norm(expr_eval(e.data.f, z));
        CHECK(testutil::close_rel(dual2, 2 * (1 + std::norm(p1)) * (1 + std::norm(p2)) * fv,
                                  1e-12));
        CHECK(dual2 >= ds2 - 1e-15);
    }
}

TEST_CASE("period obstruction on the degree-sharp complete example") {
    // m = 2: all four dz-coefficients have vanishing residues at 0 and 1, so
    // the mesh is single-valued on the base domain
    CatalogEntry e2 = catalog("complete-5.38(m=2)");
    SurfaceMesh m2 = integrate_surface(e2.data, {16, 16});
    CHECK(!m2.multivalued);

    // m = 3 carries a genuine residue at z = -1: refuse, or cut on request
    CatalogEntry e3 = catalog("complete-5.38(m=3)");
    CHECK_THROWS_WITH_AS(integrate_surface(e3.data, {16, 16}),
                         doctest::Contains("PERIOD_OBSTRUCTION"), Error);
    SurfaceMesh m3 = integrate_surface(e3.data, {16, 16}, {0, 0, 0, 0}, /*allow_cut=*/true);
    CHECK(m3.multivalued);
    CHECK(!m3.faces.empty());
}

TEST_CASE("gauss-coordinate exceptional-value bookkeeping of the R^4 entries") {
    CatalogEntry x0 = catalog("osserman-x0-4.1");
    CHECK(x0.target == "R4");
    CHECK(x0.expected_exceptional_values == 0);
    WReport r0 = wdata_validate(x0.data);
    CHECK(r0.gap_flag); // |psi2 - conj(psi1)| vanishes at z = +-1
    CHECK(!r0.all_ok);

    CatalogEntry x1 = catalog("osserman-x1-4.1");
    CHECK(x1.expected_exceptional_values == 1);
    WReport r1 = wdata_validate(x1.data);
    CHECK(r1.all_ok);
    REQUIRE(r1.punctures.size() == 1);
    CHECK(r1.punctures[0].ord_f == 1);
    CHECK(r1.punctures[0].ord_psi1 == -1);
    CHECK(r1.punctures[0].ord_psi2 == 0);
    CHECK(r1.punctures[0].ord_phi == std::array<int, 4>{0, 0, 1, 1});

    CatalogEntry x2 = catalog("osserman-x2-4.1");
    CHECK(x2.expected_exceptional_values == 2);
    WReport r2 = wdata_validate(x2.data);
    CHECK(r2.all_ok);
    CHECK(r2.punctures.empty());
}

TEST_CASE("pullback of the ambient metric reproduces -K ds^2") {
    CatalogEntry e = catalog("ma-wang-wang-4.34(n=2)");
    C z{1, 0.5};
    for (C dir : {C{1, 0}, C{0, 1}, C{0.6, -0.8}}) {
        auto [lhs, rhs] = pullback_check(e.data, z, dir);
        CHECK(rhs > 0); // -K > 0 here
        CHECK(testutil::close_rel(lhs, rhs, 1e-3));
    }
}
