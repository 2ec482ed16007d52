#include <doctest.h>

#include "helpers.hpp"
#include "lgq/quadric.hpp"

using namespace lgq;
using testutil::disc;

namespace {

ChartPair random_pair() {
    C w1 = disc(3.0), w2 = disc(3.0);
    while (std::abs(w2 - std::conj(w1)) < 1e-3) w2 = disc(3.0);
    return {ExtC(w1), ExtC(w2)};
}

} // namespace

TEST_CASE("inverse chart lands on the quadric") {
    for (int trial = 0; trial < 50; ++trial) {
        ChartPair c = random_pair();
        ProjPoint p = psi_inverse(c);
        C q = cmink_bilinear(p.rep, p.rep);
        CHECK(std::abs(q) < 1e-12 * cnorm2(p.rep));
        CHECK(quadric_membership(p) != Membership::NOT_IN_Q);
    }
}

TEST_CASE("chart round-trip on finite pairs") {
    for (int trial = 0; trial < 100; ++trial) {
        ChartPair c = random_pair();
        ChartPair back = psi_chart(psi_inverse(c));
        REQUIRE(!back.w1.inf);
        REQUIRE(!back.w2.inf);
        CHECK(std::abs(back.w1.v - c.w1.v) < 1e-10 * (1 + std::abs(c.w1.v)));
        CHECK(std::abs(back.w2.v - c.w2.v) < 1e-10 * (1 + std::abs(c.w2.v)));
    }
}

TEST_CASE("infinity branches use the pinned representatives") {
    C w = C{0.3, -1.2};

    ProjPoint p1 = psi_inverse({ExtC(w), ExtC::infinity()}); // [(1, i, -w, w)]
    CHECK(p1.approx_equal(ProjPoint(CVec4(C{1}, C{0, 1}, -w, w))));
    ChartPair b1 = psi_chart(p1);
    CHECK(!b1.w1.inf);
    CHECK(b1.w2.inf);
    CHECK(std::abs(b1.w1.v - w) < 1e-10);

    ProjPoint p2 = psi_inverse({ExtC::infinity(), ExtC(w)}); // [(1, -i, -w, w)]
    CHECK(p2.approx_equal(ProjPoint(CVec4(C{1}, C{0, -1}, -w, w))));
    ChartPair b2 = psi_chart(p2);
    CHECK(b2.w1.inf);
    CHECK(!b2.w2.inf);
    CHECK(std::abs(b2.w2.v - w) < 1e-10);

    ProjPoint p3 = psi_inverse({ExtC::infinity(), ExtC::infinity()}); // [(0,0,-1,1)]
    CHECK(p3.approx_equal(ProjPoint(CVec4(C{0}, C{0}, C{-1}, C{1}))));
    ChartPair b3 = psi_chart(p3);
    CHECK(b3.w1.inf);
    CHECK(b3.w2.inf);
}

TEST_CASE("off-quadric input is rejected") {
    ProjPoint p(CVec4(C{1}, C{0}, C{0}, C{0})); // <z,z> = 1
    CHECK(quadric_membership(p) == Membership::NOT_IN_Q);
    CHECK_THROWS_WITH_AS(psi_chart(p), doctest::Contains("NOT_ON_QUADRIC"), Error);
}

TEST_CASE("hermitian gap equals 2|w2 - conj(w1)|^2") {
    for (int trial = 0; trial < 100; ++trial) {
        ChartPair c = random_pair();
        double want = 2 * std::norm(c.w2.v - std::conj(c.w1.v));
        CHECK(testutil::close_rel(hermitian_gap(c), want, 1e-12));
    }
    // membership in Q+ iff the gap is positive
    ChartPair plus{ExtC(C{0, 0}), ExtC(C{0, 1})};
    CHECK(quadric_membership(psi_inverse(plus)) == Membership::IN_Q_PLUS);
    ChartPair boundary{ExtC(C{0.5, 0.25}), ExtC(std::conj(C{0.5, 0.25}))};
    CHECK(hermitian_gap(boundary) == 0.0);
    CHECK(quadric_membership(psi_inverse(boundary)) == Membership::IN_Q);
}

TEST_CASE("plane projectivization matches the chart") {
    // the (e1, e2) spacelike plane: [e1 - i e2] = [(1, -i, 0, 0)]
    ProjPoint p = plane_to_proj({1, 0, 0, 0}, {0, 1, 0, 0});
    CHECK(quadric_membership(p) == Membership::IN_Q_PLUS);
    ChartPair c = psi_chart(p);
    // w1 = (1 + i(-i))/(0+0) = inf branch; w2 = (1 - 1)/0 -> 0/0 handled by branch
    CHECK(c.w1.inf);
    CHECK(!c.w2.inf);
    CHECK(std::abs(c.w2.v) < 1e-12);

    CHECK_THROWS_WITH_AS(plane_to_proj({1, 0, 0, 0}, {1, 0, 0, 0}),
                         doctest::Contains("NOT_ORTHONORMAL"), Error);
    CHECK_THROWS_WITH_AS(plane_to_proj({2, 0, 0, 0}, {0, 1, 0, 0}),
                         doctest::Contains("NOT_ORTHONORMAL"), Error);
}

TEST_CASE("null pair lifts the two chart directions") {
    ChartPair c{ExtC(C{0.4, 0.1}), ExtC(C{-0.2, 0.9})};
    auto [y, ystar] = null_pair(c);
    CHECK(classify_vector(y) == CausalType::LIGHTLIKE);
    CHECK(classify_vector(ystar) == CausalType::LIGHTLIKE);
    CHECK(y[3] == 1.0);
    CHECK(ystar[3] == 1.0);
    ExtC back1 = stereographic_inv(y);
    ExtC back2 = stereographic_inv(ystar);
    REQUIRE(!back1.inf);
    REQUIRE(!back2.inf);
    CHECK(std::abs(back1.v - c.w1.v) < 1e-10);
    CHECK(std::abs(back2.v - std::conj(c.w2.v)) < 1e-10);
    ChartPair degen{ExtC(C{0.4, 0.1}), ExtC(std::conj(C{0.4, 0.1}))};
    CHECK_THROWS_WITH_AS(null_pair(degen), doctest::Contains("DEGENERATE_PAIR"), Error);
}

TEST_CASE("canonical metric formula and guard rails") {
    for (int trial = 0; trial < 50; ++trial) {
        ChartPair c = random_pair();
        C dw1 = disc(), dw2 = disc();
        C denom = std::conj(c.w1.v) - c.w2.v;
        double want = (4.0 * std::conj(dw1) * dw2 / (denom * denom)).real();
        CHECK(testutil::close_rel(metric_g(c, dw1, dw2), want, 1e-10));
    }
    ChartPair degen{ExtC(C{1, 1}), ExtC(C{1, -1})};
    CHECK_THROWS_WITH_AS(metric_g(degen, C{1}, C{1}), doctest::Contains("DEGENERATE_PAIR"),
                         Error);
    ChartPair at_inf{ExtC::infinity(), ExtC(C{0, 1})};
    CHECK_THROWS_WITH_AS(metric_g(at_inf, C{1}, C{1}), doctest::Contains("OUT_OF_DOMAIN"),
                         Error);
}
