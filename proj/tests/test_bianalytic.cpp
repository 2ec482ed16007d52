#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "lgq/bianalytic.hpp"

using namespace lgq;
using testutil::disc;

namespace {

constexpr double PI = 3.14159265358979323846;

// --- small polynomial helpers for the composition oracle ---------------------

std::vector<C> pscale(std::vector<C> p, C s) {
    for (auto& c : p) c *= s;
    return p;
}

std::vector<C> padd(std::vector<C> a, const std::vector<C>& b) {
    if (a.size() < b.size()) a.resize(b.size(), C{0});
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

std::vector<C> pmul(const std::vector<C>& a, const std::vector<C>& b) {
    std::vector<C> r(a.size() + b.size() - 1, C{0});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<C> ppow(const std::vector<C>& a, int n) {
    std::vector<C> r{C{1}};
    for (int i = 0; i < n; ++i) r = pmul(r, a);
    return r;
}

// f ∘ N as a (numerator, denominator) pair: substitute w -> (aw+b)/(cw+d) and
// clear denominators to degree D = max(deg P, deg Q).
std::pair<std::vector<C>, std::vector<C>> compose_mobius(const std::vector<C>& P,
                                                         const std::vector<C>& Q,
                                                         const MobiusMat& N) {
    int D = (int)std::max(P.size(), Q.size()) - 1;
    std::vector<C> up{N.b, N.a};   // a w + b, ascending
    std::vector<C> down{N.d, N.c}; // c w + d
    auto lift = [&](const std::vector<C>& p) {
        std::vector<C> acc{C{0}};
        for (size_t j = 0; j < p.size(); ++j)
            acc = padd(acc, pscale(pmul(ppow(up, (int)j), ppow(down, D - (int)j)), p[j]));
        return acc;
    };
    return {lift(P), lift(Q)};
}

// g = conj(M) ∘ f ∘ M^{-1}, satisfying E_g = M(E_f).
RationalFn transported(const RationalFn& f, const MobiusMat& M) {
    auto [A, B] = compose_mobius(f.P, f.Q, M.inverse());
    MobiusMat Mc = M.conj_entries();
    std::vector<C> num = padd(pscale(A, Mc.a), pscale(B, Mc.b));
    std::vector<C> den = padd(pscale(A, Mc.c), pscale(B, Mc.d));
    return RationalFn(num, den);
}

ExtC apply_cert_map(const MobiusMat& M, const ExtC& w) { return mobius_apply(M, w); }

// set equality on the sphere up to tol, multiplicity-free
bool same_point_set(std::vector<ExtC> a, std::vector<ExtC> b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        bool hit = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && chordal(p, b[j]) < tol) {
                used[j] = true;
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

std::vector<ExtC> solution_points(const EfResult& r) {
    std::vector<ExtC> pts;
    for (const auto& c : r.roots) pts.push_back(ExtC(c.root));
    if (r.infinity_member) pts.push_back(ExtC::infinity());
    return pts;
}

} // namespace

TEST_CASE("rational constructor: trimming, coprimality, degeneracy") {
    RationalFn f({C{1}, C{0}, C{1e-18}}, {C{1}});
    CHECK(f.degP() == 0);
    CHECK(f.m == 0);

    // (w-1)(w-2) / (w-1)(w-3): common factor
    CHECK_THROWS_WITH_AS(RationalFn({C{2}, C{-3}, C{1}}, {C{3}, C{-4}, C{1}}),
                         doctest::Contains("NONCOPRIME"), Error);
    // zero numerator against nonconstant denominator
    CHECK_THROWS_WITH_AS(RationalFn({C{0}}, {C{0}, C{1}}), doctest::Contains("NONCOPRIME"),
                         Error);
    // zero denominator
    CHECK_THROWS_WITH_AS(RationalFn({C{1}}, {C{0}}), doctest::Contains("DEGENERATE_INPUT"),
                         Error);
    CHECK_THROWS_WITH_AS(RationalFn({C{1}}, {}), doctest::Contains("DEGENERATE_INPUT"), Error);
    // non-finite coefficient
    double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_WITH_AS(RationalFn({C{nan}}, {C{1}}), doctest::Contains("DEGENERATE_INPUT"),
                         Error);

    // eval / F / deriv agree with direct arithmetic (coefficients are rescaled
    // by a shared factor, so the quotient is unchanged)
    RationalFn g({C{1}, C{0}, C{1}}, {C{-2}, C{1}}); // (w^2+1)/(w-2)
    C w{1, 1};
    C want = (w * w + 1.0) / (w - 2.0);
    CHECK(std::abs(g.eval(w) - want) < 1e-13);
    C fd = (g.eval(w + 1e-6) - g.eval(w - 1e-6)) / 2e-6;
    CHECK(std::abs(g.deriv(w) - fd) < 1e-6);
    // F = P - conj(w) Q vanishes exactly on solutions of f(w) = conj(w)
    RationalFn h({C{1}}, {C{0}, C{0}, C{0}, C{1}}); // 1/w^3
    CHECK(std::abs(h.F(C{1, 0})) < 1e-15);
    CHECK(std::abs(h.F(C{-1, 0})) < 1e-15);
}

TEST_CASE("winding numbers on explicit contours") {
    Contour unit = Contour::circle(C{0, 0}, 1.0);
    CHECK(winding([](C w) { return w; }, unit) == 1);
    CHECK(winding([](C w) { return std::conj(w); }, unit) == -1);
    CHECK(winding([](C w) { return w * w; }, unit) == 2);
    CHECK(winding([](C w) { return w - C{3, 0}; }, unit) == 0);

    Contour box = Contour::rect(-1, 1, -1, 1);
    CHECK(winding([](C w) { return w - C{0.2, 0.3}; }, box) == 1);
    CHECK(winding([](C w) { return (w - C{0.5, 0}) * (w + C{0.5, 0}); }, box) == 2);

    CHECK_THROWS_WITH_AS(winding([](C w) { return w - C{1, 0}; }, unit),
                         doctest::Contains("CONTOUR_THROUGH_ZERO"), Error);

    // deterministic: same value on repeated evaluation
    auto G = [](C w) { return w * w * w - C{0.1, 0.2}; };
    CHECK(winding(G, unit) == winding(G, unit));
}

TEST_CASE("reciprocal power maps solve to roots of unity") {
    for (int mm = 2; mm <= 5; ++mm) {
        std::vector<C> Q(mm + 1, C{0});
        Q[mm] = C{1};
        RationalFn f({C{1}}, Q); // 1/w^m
        EfResult r = solve_Ef(f);
        REQUIRE(r.kind == EfResult::Kind::DISCRETE);
        CHECK(!r.infinity_member);
        REQUIRE((int)r.roots.size() == mm - 1);
        CHECK(r.index_sum == mm - 1);
        // roots are exactly the (m-1)-th roots of unity
        std::vector<bool> seen(mm - 1, false);
        for (const auto& cert : r.roots) {
            CHECK(cert.index == 1);
            CHECK(!cert.low_confidence);
            CHECK(cert.residual < 1e-10);
            bool matched = false;
            for (int k = 0; k < mm - 1; ++k) {
                C target = std::polar(1.0, 2 * PI * k / (mm - 1));
                if (std::abs(cert.root - target) < 1e-9 && !seen[k]) {
                    seen[k] = true;
                    matched = true;
                    break;
                }
            }
            CHECK(matched);
            // root sits inside its isolating box
            CHECK(cert.root.real() >= cert.box_x0);
            CHECK(cert.root.real() <= cert.box_x1);
            CHECK(cert.root.imag() >= cert.box_y0);
            CHECK(cert.root.imag() <= cert.box_y1);
        }
    }
}

TEST_CASE("squaring map: four finite solutions plus infinity") {
    RationalFn f({C{0}, C{0}, C{1}}, {C{1}}); // w^2
    EfResult r = solve_Ef(f);
    REQUIRE(r.kind == EfResult::Kind::DISCRETE);
    CHECK(r.infinity_member);
    CHECK(r.normalized); // deg P > deg Q forces a conjugation
    REQUIRE(r.roots.size() == 4);
    CHECK(r.index_sum == 1); // m - 1 for the normalized problem
    std::vector<ExtC> want{ExtC(C{0, 0}), ExtC(C{1, 0}),
                           ExtC(std::polar(1.0, 2 * PI / 3)),
                           ExtC(std::polar(1.0, -2 * PI / 3))};
    CHECK(same_point_set(solution_points(r),
                         {want[0], want[1], want[2], want[3], ExtC::infinity()}, 1e-7));

    BoundsReport b = bounds_report(f, r);
    CHECK(b.m == 2);
    CHECK(b.ef_count == 5);
    CHECK(b.index_sum == 1);
    CHECK(b.q1_lo == 5);
    CHECK(b.q1_hi == 0); // empty window: 5 solutions exceed what m = 2 allows
    CHECK(b.flat_forced_count);
    CHECK(!b.flat_forced_degree);
    CHECK(!b.count_anomaly); // 5 is inside [m-1, (m+1)^2] = [1, 9]
}

TEST_CASE("degree six forces the flat bound") {
    std::vector<C> Q(7, C{0});
    Q[6] = C{1};
    RationalFn f({C{1}}, Q); // 1/w^6
    EfResult r = solve_Ef(f);
    CHECK(r.roots.size() == 5);
    CHECK(r.index_sum == 5);
    BoundsReport b = bounds_report(f, r);
    CHECK(b.m == 6);
    CHECK(b.flat_forced_degree);
    CHECK(b.ef_count == 5);
    CHECK(!b.count_anomaly);
}

TEST_CASE("degree at most one is delegated to the conjugate-similarity solver") {
    SUBCASE("identity: the full real axis") {
        RationalFn f({C{0}, C{1}}, {C{1}}); // w
        EfResult r = solve_Ef(f);
        REQUIRE(r.kind == EfResult::Kind::CIRCLINE);
        CHECK(r.circline.is_line);
        CHECK(std::abs(r.circline.dir.imag()) < 1e-12);
        BoundsReport b = bounds_report(f, r);
        CHECK(b.ef_count == -1); // continuum marker
    }
    SUBCASE("rotation: a rotated line") {
        RationalFn f({C{0}, std::polar(1.0, 0.8)}, {C{1}}); // e^{0.8 i} w
        EfResult r = solve_Ef(f);
        REQUIRE(r.kind == EfResult::Kind::CIRCLINE);
        CHECK(r.circline.is_line);
    }
    SUBCASE("doubling: origin and infinity") {
        RationalFn f({C{0}, C{2}}, {C{1}}); // 2w
        EfResult r = solve_Ef(f);
        REQUIRE(r.kind == EfResult::Kind::DISCRETE);
        CHECK(r.infinity_member);
        REQUIRE(r.roots.size() == 1);
        CHECK(std::abs(r.roots[0].root) < 1e-9);
    }
    SUBCASE("translation: infinity only") {
        RationalFn f({C{1}, C{1}}, {C{1}}); // w + 1
        EfResult r = solve_Ef(f);
        REQUIRE(r.kind == EfResult::Kind::DISCRETE);
        CHECK(r.infinity_member);
        CHECK(r.roots.empty());
    }
    SUBCASE("constant: the conjugate point, attracting") {
        RationalFn f({C{0.3, 0.4}}, {C{1}});
        EfResult r = solve_Ef(f);
        REQUIRE(r.kind == EfResult::Kind::DISCRETE);
        REQUIRE(r.roots.size() == 1);
        CHECK(std::abs(r.roots[0].root - C{0.3, -0.4}) < 1e-12);
        CHECK(r.roots[0].index == -1);
        CHECK(r.index_sum == -1);
        CHECK(!r.infinity_member);
    }
}

TEST_CASE("local index classification") {
    RationalFn expanding({C{0}, C{2}}, {C{1}});   // |f'| = 2
    CHECK(local_index(expanding, C{0, 0}) == 1);
    RationalFn contracting({C{0}, C{0.5}}, {C{1}}); // |f'| = 1/2
    CHECK(local_index(contracting, C{0, 0}) == -1);
    RationalFn inv3({C{1}}, {C{0}, C{0}, C{0}, C{1}}); // 1/w^3, |f'(1)| = 3
    CHECK(local_index(inv3, C{1, 0}) == 1);
    // identity: every solution is embedded in the real line, never isolated
    RationalFn ident({C{0}, C{1}}, {C{1}});
    CHECK_THROWS_WITH_AS(local_index(ident, C{0.7, 0}), doctest::Contains("NOT_ISOLATED"),
                         Error);
    // non-solution input: residual too large to certify
    CHECK_THROWS_WITH_AS(local_index(inv3, C{5, 5}), doctest::Contains("NOT_ISOLATED"), Error);
}

TEST_CASE("solution sets transport along mobius conjugation") {
    RationalFn f({C{1}}, {C{0}, C{0}, C{0}, C{1}}); // 1/w^3, E_f = {1, -1}
    EfResult base = solve_Ef(f);
    std::vector<ExtC> base_pts = solution_points(base);

    MobiusMat maps[] = {
        MobiusMat(C{1, 0.3}, C{0.2, 0}, C{0, -0.1}, C{1, 0}),
        MobiusMat(C{0.8, 0}, C{0, 0.5}, C{0.3, 0.1}, C{1, -0.2}),
        MobiusMat(C{0, 1}, C{1, 0}, C{1, 0}, C{0, 0.5}),
    };
    for (const MobiusMat& M : maps) {
        RationalFn g = transported(f, M);
        CHECK(g.m == 3);
        EfResult moved = solve_Ef(g);
        REQUIRE(moved.kind == EfResult::Kind::DISCRETE);
        std::vector<ExtC> expect;
        for (const auto& p : base_pts) expect.push_back(apply_cert_map(M, p));
        CHECK(same_point_set(solution_points(moved), expect, 1e-7));
        CHECK(moved.index_sum == base.index_sum);
    }
}

TEST_CASE("random low-degree rationals satisfy the index-sum identity") {
    int done = 0;
    while (done < 12) {
        int dp = (int)(testutil::uniform(0, 3.999));
        int dq = (int)(testutil::uniform(0, 3.999));
        if (std::max(dp, dq) < 2) continue;
        std::vector<C> P(dp + 1), Q(dq + 1);
        for (auto& c : P) c = disc();
        for (auto& c : Q) c = disc();
        try {
            RationalFn f(P, Q);
            if (f.m < 2) continue;
            EfResult r = solve_Ef(f);
            REQUIRE(r.kind == EfResult::Kind::DISCRETE);
            CHECK(r.index_sum == f.m - 1);
            BoundsReport b = bounds_report(f, r);
            CHECK(!b.count_anomaly);
            CHECK(b.q1_lo == (int)r.roots.size() + (r.infinity_member ? 1 : 0));
            CHECK(b.q1_hi == f.m - b.q1_lo + 3);
            ++done;
        } catch (const Error&) {
            continue; // rare degenerate draw
        }
    }
}
