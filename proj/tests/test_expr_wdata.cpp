#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lgq/catalog.hpp"
#include "lgq/wdata.hpp"

using namespace lgq;
using testutil::disc;

namespace {
constexpr double PI = 3.14159265358979323846;
}

TEST_CASE("expression parser handles the documented grammar") {
    CHECK(parse_complex("i") == C{0, 1});
    CHECK(parse_complex("2i") == C{0, 2});
    CHECK(testutil::close(parse_complex("pi").real(), PI, 1e-15));
    CHECK(testutil::close(parse_complex("e").real(), std::exp(1.0), 1e-15));
    CHECK(parse_complex("1e-3") == C{1e-3, 0});
    CHECK(parse_complex("-3+4i") == C{-3, 4});
    CHECK(testutil::close(parse_complex("2pi").real(), 2 * PI, 1e-15));
    CHECK(testutil::close(std::abs(parse_complex("exp(i*pi)") + 1.0), 0.0, 1e-15));

    Expr ez = expr_parse("z^2 + 3z - 1/(z - 2)");
    C z{0.5, 0.25};
    C want = z * z + 3.0 * z - 1.0 / (z - 2.0);
    CHECK(std::abs(expr_eval(ez, z) - want) < 1e-14);

    // numeric literals multiply a following identifier (as in "2i", "3z");
    // everything else uses explicit operators
    Expr e2 = expr_parse("2z * (z + 1)");
    CHECK(std::abs(expr_eval(e2, C{2, 0}) - C{12, 0}) < 1e-14);

    CHECK_THROWS_WITH_AS(expr_parse("z +"), doctest::Contains("PARSE_ERROR"), Error);
    CHECK_THROWS_WITH_AS(expr_parse("(z"), doctest::Contains("PARSE_ERROR"), Error);
    CHECK_THROWS_WITH_AS(expr_parse("z ^ w"), doctest::Contains("PARSE_ERROR"), Error);
    CHECK_THROWS_WITH_AS(parse_complex("z + 1"), doctest::Contains("PARSE_ERROR"), Error);
}

TEST_CASE("symbolic derivative matches finite differences") {
    const char* exprs[] = {"z^3 - 2z", "exp(z^2)", "1/(z^2+1)", "(z+1)/(z-2)", "exp(-z)*z^2"};
    for (const char* s : exprs) {
        Expr e = expr_parse(s);
        Expr d = expr_diff(e);
        for (int trial = 0; trial < 5; ++trial) {
            C z = disc(0.8);
            double h = 1e-5;
            C fd = (expr_eval(e, z + h) - expr_eval(e, z - h)) / (2 * h);
            CHECK(std::abs(expr_eval(d, z) - fd) < 1e-7 * (1 + std::abs(fd)));
        }
        // printed form reparses to the same function
        Expr r = expr_parse(expr_str(e));
        C z{0.3, -0.4};
        CHECK(std::abs(expr_eval(r, z) - expr_eval(e, z)) < 1e-13);
    }
}

TEST_CASE("constant folding detection") {
    C v;
    CHECK(expr_is_const(expr_parse("2 + 3i"), &v));
    CHECK(v == C{2, 3});
    CHECK(expr_is_const(expr_parse("exp(1) * pi"), nullptr));
    CHECK(!expr_is_const(expr_parse("z + 1"), nullptr));
}

TEST_CASE("order counting at zeros and poles") {
    CHECK(order_at(expr_parse("z^3"), C{0, 0}) == 3);
    CHECK(order_at(expr_parse("1/z^2"), C{0, 0}) == -2);
    CHECK(order_at(expr_parse("(z-1)^2/(z+1)"), C{1, 0}) == 2);
    CHECK(order_at(expr_parse("(z-1)^2/(z+1)"), C{-1, 0}) == -1);
    CHECK(order_at(expr_parse("exp(z)"), C{0.3, 0.4}) == 0);
    CHECK(order_at(expr_parse("z^2 - 2z + 1"), C{1, 0}) == 2);
    CHECK_THROWS_WITH_AS(order_at(expr_const(C{0, 0}), C{0, 0}),
                         doctest::Contains("DEGENERATE_INPUT"), Error);
}

TEST_CASE("loop integrals reproduce residues") {
    Loop unit{C{0, 0}, 1.0};
    // ∮ (1/z) dz = 2 pi i  (expr = 1/z, f = 1)
    C val = loop_integral(expr_parse("1/z"), expr_const(C{1, 0}), unit);
    CHECK(std::abs(val - C{0, 2 * PI}) < 1e-9);
    // ∮ z dz = 0
    C val2 = loop_integral(expr_parse("z"), expr_const(C{1, 0}), unit);
    CHECK(std::abs(val2) < 1e-9);
    // product splitting: expr * f with f = 1/z^2, expr = z -> residue of 1/z
    C val3 = loop_integral(expr_parse("z"), expr_parse("1/z^2"), unit);
    CHECK(std::abs(val3 - C{0, 2 * PI}) < 1e-9);
    // off-center loop not enclosing the pole
    C val4 = loop_integral(expr_parse("1/z"), expr_const(C{1, 0}), Loop{C{3, 0}, 1.0});
    CHECK(std::abs(val4) < 1e-9);
}

TEST_CASE("metric, phi and curvature agree with the closed forms") {
    // psi1 = z, psi2 = z^2, f = 1 on a rectangle away from degeneracy
    WData w;
    w.psi1 = expr_parse("z");
    w.psi2 = expr_parse("z^2");
    w.f = expr_const(C{1, 0});
    w.domain = Domain::rectangle(0.1, 0.9, 0.1, 0.9);

    for (int trial = 0; trial < 20; ++trial) {
        C z{testutil::uniform(0.15, 0.85), testutil::uniform(0.15, 0.85)};
        C p1 = z, p2 = z * z;
        CVec4 phi = phi_from_wdata(w, z);
        CHECK(std::abs(phi[0] - (p1 + p2)) < 1e-14);
        CHECK(std::abs(phi[1] - C{0, -1} * (p1 - p2)) < 1e-14);
        CHECK(std::abs(phi[2] - (C{1, 0} - p1 * p2)) < 1e-14);
        CHECK(std::abs(phi[3] - (C{1, 0} + p1 * p2)) < 1e-14);
        // <phi, phi> = 0 (null curve)
        CHECK(std::abs(cmink_bilinear(phi, phi)) < 1e-13);
        // ds^2 conformal factor = 2|psi1 - conj(psi2)|^2 |f|^2 = <phi, conj phi>
        double lam = metric_ds2(w, z);
        CHECK(testutil::close_rel(lam, 2 * std::norm(p1 - std::conj(p2)), 1e-12));
        CHECK(testutil::close_rel(lam, cmink_hermitian(phi, phi).real(), 1e-12));
        // curvature formula with psi' = dpsi/dz / f
        C d1{1, 0}, d2 = 2.0 * z;
        C g = p1 - std::conj(p2);
        double K = -2 * (std::conj(d1) * d2 * g * g).real() / std::pow(std::abs(g), 6);
        CHECK(testutil::close_rel(gauss_K(w, z), K, 1e-10));
    }
}

TEST_CASE("degenerate metric and pole guards") {
    CHECK(degenerate_gap(C{0.5, 0.25}, std::conj(C{0.5, 0.25})));
    CHECK(!degenerate_gap(C{0.5, 0.25}, C{0.5, 0.5}));

    // psi1 = z, psi2 = i: metric degenerates where z = conj(i) = -i
    WData w;
    w.psi1 = expr_parse("z");
    w.psi2 = expr_const(C{0, 1});
    w.f = expr_const(C{1, 0});
    w.domain = Domain::rectangle(-2, 2, -2, 2);
    CHECK_THROWS_WITH_AS(gauss_K(w, C{0, -1}), doctest::Contains("DEGENERATE_METRIC"), Error);
    CHECK(std::isfinite(gauss_K(w, C{1, 1})));

    // f with a zero: dh vanishes there
    WData w2 = w;
    w2.f = expr_parse("z");
    CHECK_THROWS_WITH_AS(gauss_K(w2, C{0, 0}), doctest::Contains("DEGENERATE_METRIC"), Error);

    // phi has a pole where psi blows up faster than f vanishes
    WData w3;
    w3.psi1 = expr_parse("1/z^2");
    w3.psi2 = expr_parse("1/z^2");
    w3.f = expr_const(C{1, 0});
    w3.domain = Domain::rectangle(-1, 1, -1, 1);
    CHECK_THROWS_WITH_AS(phi_from_wdata(w3, C{0, 0}), doctest::Contains("POLE_HIT"), Error);
}

TEST_CASE("validation of a catalog entry with punctured domain") {
    WData w = catalog("ma-wang-wang-4.34(n=2)").data;
    WReport rep = wdata_validate(w);
    CHECK(rep.all_ok);
    CHECK(!rep.gap_flag);
    // true infimum of |psi2 - conj(psi1)| is sqrt(3), attained on |z| = 1;
    // the sampled minimum sits just above it
    CHECK(rep.min_gap >= std::sqrt(3.0) - 1e-9);
    CHECK(rep.min_gap < std::sqrt(3.0) + 1e-2);
    REQUIRE(rep.punctures.size() == 1);
    const PunctureCheck& pc = rep.punctures[0];
    CHECK(pc.declared);
    CHECK(pc.ok); // declared ends may carry phi poles
    CHECK(pc.ord_psi1 == 2);
    CHECK(pc.ord_psi2 == -2);
    CHECK(pc.ord_f == 0);
    CHECK(pc.ord_phi[0] == -2);
    CHECK(pc.ord_phi[1] == -2);
    CHECK(pc.ord_phi[2] == 0);
    CHECK(pc.ord_phi[3] == 0);
    for (const auto& lc : rep.loops) {
        CHECK(lc.ok);
        CHECK(lc.resid_conj < 1e-8);
        CHECK(lc.resid_re_dh < 1e-8);
        CHECK(lc.resid_re_psi12 < 1e-8);
    }
}

TEST_CASE("gap flag triggers when the degenerate locus meets the domain") {
    WData w;
    w.psi1 = expr_parse("z");
    w.psi2 = expr_const(C{0, 1});
    w.f = expr_const(C{1, 0});
    w.domain = Domain::rectangle(-2, 2, -2, 2);
    WReport rep = wdata_validate(w);
    CHECK(rep.gap_flag);
    CHECK(rep.min_gap < 1e-9);
    CHECK(std::abs(rep.min_gap_at - C{0, -1}) < 1e-6);
    CHECK(!rep.all_ok);
}

TEST_CASE("families build the advertised data and enforce preconditions") {
    Domain dom = Domain::annulus(0.5, 2.0);

    SUBCASE("hyperbolic") {
        double u = 0.4;
        WData w = family_hyperbolic(expr_parse("z"), expr_const(C{1, 0}), u, dom);
        for (int trial = 0; trial < 10; ++trial) {
            C z = std::polar(testutil::uniform(0.6, 1.9), testutil::uniform(0.0, 2 * PI));
            C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z);
            CHECK(std::abs(p2 - std::exp(2 * u) * p1) < 1e-12);
            // conformal factor: 2|e^{2u} z - conj(z)|^2 |f|^2, bounded between
            // 2(e^{2u}-1)^2 |z|^2 and 2(e^{2u}+1)^2 |z|^2
            double lam = metric_ds2(w, z);
            double lo = 2 * std::pow((std::exp(2 * u) - 1) * std::abs(z), 2);
            double hi = 2 * std::pow((std::exp(2 * u) + 1) * std::abs(z), 2);
            CHECK(lam >= lo - 1e-12);
            CHECK(lam <= hi + 1e-12);
        }
        // psi must avoid 0 on the domain
        CHECK_THROWS_WITH_AS(
            family_hyperbolic(expr_parse("z - 1"), expr_const(C{1, 0}), u, dom),
            doctest::Contains("FAMILY_PRECONDITION_FAILED"), Error);
    }

    SUBCASE("elliptic") {
        double al = PI / 3;
        WData w = family_elliptic(expr_parse("z"), expr_const(C{1, 0}), al, dom);
        for (int trial = 0; trial < 10; ++trial) {
            C z = std::polar(testutil::uniform(0.6, 1.9), testutil::uniform(0.0, 2 * PI));
            C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z);
            CHECK(std::abs(p2 - std::exp(C{0, -2 * al}) / p1) < 1e-12);
            // factor: 2[|psi|^2 + |psi|^{-2} - 2 cos 2a] |g|^2
            double r2 = std::norm(z);
            double want = 2 * (r2 + 1 / r2 - 2 * std::cos(2 * al));
            CHECK(testutil::close_rel(metric_ds2(w, z), want, 1e-10));
        }
        // g/psi unbounded when psi has a zero omega does not match
        Domain dom0 = Domain::rectangle(-1, 1, -1, 1);
        CHECK_THROWS_WITH_AS(family_elliptic(expr_parse("z"), expr_const(C{1, 0}), al, dom0),
                             doctest::Contains("FAMILY_PRECONDITION_FAILED"), Error);
    }

    SUBCASE("parabolic") {
        WData w = family_parabolic(expr_parse("z"), expr_const(C{1, 0}),
                                   Domain::rectangle(-1, 1, -1, 1));
        for (int trial = 0; trial < 10; ++trial) {
            C z = disc(0.9);
            C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z);
            CHECK(std::abs(p2 - (p1 + 1.0)) < 1e-14);
            // factor: 2(1 + 4 (Im psi)^2) |f|^2
            double want = 2 * (1 + 4 * std::pow(p1.imag(), 2));
            CHECK(testutil::close_rel(metric_ds2(w, z), want, 1e-12));
        }
        CHECK_THROWS_WITH_AS(family_parabolic(expr_parse("z"), expr_parse("z"),
                                              Domain::rectangle(-1, 1, -1, 1)),
                             doctest::Contains("FAMILY_PRECONDITION_FAILED"), Error);
    }
}

TEST_CASE("domain geometry helpers") {
    Domain r = Domain::rectangle(0, 2, -1, 1);
    CHECK(r.contains(C{1, 0}));
    CHECK(!r.contains(C{3, 0}));
    Domain a = Domain::annulus(0.5, 2.0);
    CHECK(a.contains(C{1, 0}));
    CHECK(!a.contains(C{0.1, 0}));
    CHECK(!a.contains(C{0, 3}));
    a.punctures.push_back(C{1, 0});
    auto pts = a.samples(15, 15);
    CHECK(!pts.empty());
    for (C z : pts) {
        CHECK(a.contains(z));
        CHECK(std::abs(z - C{1, 0}) > 1e-6);
    }
}
