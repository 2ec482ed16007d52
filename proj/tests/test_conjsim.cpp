#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lgq/conjsim.hpp"

using namespace lgq;
using testutil::disc;

namespace {

MobiusMat random_sl2() {
    for (;;) {
        C a = disc(), b = disc(), c = disc(), d = disc();
        C det = a * d - b * c;
        if (std::abs(det) < 0.05) continue;
        MobiusMat S(a, b, c, d);
        // keep away from the parabolic boundary so the tag is stable
        RealMat4 R = rmat(S);
        double tau = (R * R).trace() / 2.0;
        if (std::abs(tau - 2.0) < 1e-3) continue;
        return S;
    }
}

MobiusMat mmul(const MobiusMat& X, const MobiusMat& Y) { return X.compose(Y); }

double entry_dist(const MobiusMat& X, const MobiusMat& Y) {
    auto d = [](C p, C q) { return std::abs(p - q); };
    double plus = std::max(std::max(d(X.a, Y.a), d(X.b, Y.b)), std::max(d(X.c, Y.c), d(X.d, Y.d)));
    double minus =
        std::max(std::max(d(X.a, -Y.a), d(X.b, -Y.b)), std::max(d(X.c, -Y.c), d(X.d, -Y.d)));
    return std::min(plus, minus);
}

} // namespace

TEST_CASE("realification has the documented block form") {
    MobiusMat S(C{1, 2}, C{0, -1}, C{0.5, 0}, C{2, -3}); // arbitrary
    RealMat4 R = rmat(S);
    // v -> conj(S v): check against direct evaluation on a few vectors
    for (int trial = 0; trial < 10; ++trial) {
        C v1 = disc(), v2 = disc();
        C w1 = std::conj(S.a * v1 + S.b * v2);
        C w2 = std::conj(S.c * v1 + S.d * v2);
        std::array<double, 4> x{v1.real(), v2.real(), v1.imag(), v2.imag()};
        auto y = R * x;
        CHECK(testutil::close(y[0], w1.real(), 1e-12));
        CHECK(testutil::close(y[1], w2.real(), 1e-12));
        CHECK(testutil::close(y[2], w1.imag(), 1e-12));
        CHECK(testutil::close(y[3], w2.imag(), 1e-12));
    }
}

TEST_CASE("conjugate eigenvalues of hyperbolic diagonal element") {
    double u = 0.8;
    MobiusMat S(std::exp(u), 0, 0, std::exp(-u));
    auto pairs = conj_eigen(S);
    REQUIRE(pairs.size() == 2);
    CHECK(testutil::close(pairs[0].r, std::exp(u), 1e-10));
    CHECK(testutil::close(pairs[1].r, std::exp(-u), 1e-10));
    CHECK(pairs[0].dim == 1);
    CHECK(pairs[1].dim == 1);
    // each representative satisfies S v = r conj(v)
    for (const auto& p : pairs) {
        for (const auto& v : p.vectors) {
            C r1 = S.a * v[0] + S.b * v[1] - p.r * std::conj(v[0]);
            C r2 = S.c * v[0] + S.d * v[1] - p.r * std::conj(v[1]);
            CHECK(std::abs(r1) < 1e-9);
            CHECK(std::abs(r2) < 1e-9);
        }
    }
}

TEST_CASE("canonical forms of the model elements") {
    SUBCASE("unipotent") {
        ConjClass c = conj_canonical(MobiusMat(1, 1, 0, 1));
        CHECK(c.tag == ConjTag::UNIPOTENT);
        CHECK(c.param == 0.0);
    }
    SUBCASE("diagonal hyperbolic") {
        ConjClass c = conj_canonical(MobiusMat(std::exp(1.0), 0, 0, std::exp(-1.0)));
        CHECK(c.tag == ConjTag::DIAG);
        CHECK(testutil::close(c.param, 1.0, 1e-9));
    }
    SUBCASE("real rotation") {
        double al = 0.7;
        MobiusMat S(std::cos(al), std::sin(al), -std::sin(al), std::cos(al));
        ConjClass c = conj_canonical(S);
        CHECK(c.tag == ConjTag::ROTATION);
        CHECK(testutil::close(c.param, al, 1e-9));
    }
    SUBCASE("identity and minus identity") {
        ConjClass c = conj_canonical(MobiusMat(1, 0, 0, 1));
        CHECK(c.tag == ConjTag::DIAG);
        CHECK(c.param == 0.0);
        ConjClass cm = conj_canonical(MobiusMat(-1, 0, 0, -1));
        CHECK(cm.tag == ConjTag::DIAG);
        CHECK(cm.param == 0.0);
        CHECK(cm.sign == -1);
    }
    SUBCASE("complex-unitary diagonal is in the identity class") {
        // diag(e^{i t/2}, e^{-i t/2}) solves S v = conj(v) on a 2-real-dim space:
        // conjugate similarity does not see the Möbius-elliptic angle.
        MobiusMat S(std::polar(1.0, 0.45), 0, 0, std::polar(1.0, -0.45));
        ConjClass c = conj_canonical(S);
        CHECK(c.tag == ConjTag::DIAG);
        CHECK(c.param == 0.0);
        auto pairs = conj_eigen(S);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].dim == 2);
    }
}

TEST_CASE("witness reconstructs S from its canonical form") {
    for (int trial = 0; trial < 60; ++trial) {
        MobiusMat S = random_sl2();
        ConjClass c = conj_canonical(S);
        MobiusMat R = mmul(mmul(c.witness.conj_entries(), c.canonical), c.witness.inverse());
        if (c.sign < 0) R = MobiusMat(-R.a, -R.b, -R.c, -R.d);
        CHECK(entry_dist(R, S) < 1e-7);
    }
}

TEST_CASE("conjugate similarity is detected across random conjugations") {
    for (int trial = 0; trial < 40; ++trial) {
        MobiusMat S = random_sl2();
        MobiusMat T = random_sl2();
        MobiusMat S2 = mmul(mmul(T.conj_entries(), S), T.inverse());
        CHECK(conj_similar(S, S2, 1e-7));
    }
    CHECK(!conj_similar(MobiusMat(std::exp(0.5), 0, 0, std::exp(-0.5)),
                        MobiusMat(std::exp(0.9), 0, 0, std::exp(-0.9)), 1e-7));
    CHECK(!conj_similar(MobiusMat(1, 1, 0, 1),
                        MobiusMat(std::cos(0.3), std::sin(0.3), -std::sin(0.3), std::cos(0.3)),
                        1e-7));
}

TEST_CASE("fixed-set sizes follow the class dictionary") {
    SUBCASE("DIAG(u>0): two points") {
        EFixSet e = e_set(MobiusMat(std::exp(1.0), 0, 0, std::exp(-1.0)));
        CHECK(e.kind == EFixSet::Kind::FINITE);
        CHECK(e.points.size() == 2);
        // diag action w -> e^{2u} w; solutions of e^2 w = conj(w) on the sphere: 0, inf
        bool has0 = false, hasInf = false;
        for (auto& p : e.points) {
            if (p.inf) hasInf = true;
            else if (std::abs(p.v) < 1e-9) has0 = true;
        }
        CHECK(has0);
        CHECK(hasInf);
    }
    SUBCASE("UNIPOTENT: one point") {
        EFixSet e = e_set(MobiusMat(1, 1, 0, 1));
        CHECK(e.kind == EFixSet::Kind::FINITE);
        REQUIRE(e.points.size() == 1);
        CHECK(e.points[0].inf);
    }
    SUBCASE("ROTATION: empty") {
        double al = 0.7;
        EFixSet e = e_set(MobiusMat(std::cos(al), std::sin(al), -std::sin(al), std::cos(al)));
        CHECK(e.kind == EFixSet::Kind::FINITE);
        CHECK(e.points.empty());
    }
    SUBCASE("identity class: a full circline") {
        EFixSet e = e_set(MobiusMat(1, 0, 0, 1));
        REQUIRE(e.kind == EFixSet::Kind::CIRCLINE);
        CHECK(e.circline.is_line); // w = conj(w): the real axis
        CHECK(std::abs(e.circline.dir.imag()) < 1e-9);

        // e^{i t} w = conj(w) is again a line through the origin
        MobiusMat U(std::polar(1.0, 0.3), 0, 0, std::polar(1.0, -0.3));
        EFixSet eu = e_set(U);
        REQUIRE(eu.kind == EFixSet::Kind::CIRCLINE);
        CHECK(eu.circline.is_line);
        // every claimed point satisfies M(w) = conj(w)
        for (double t : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            ExtC w(eu.circline.point + t * eu.circline.dir);
            ExtC img = mobius_apply(U, w);
            REQUIRE(!img.inf);
            CHECK(std::abs(img.v - std::conj(w.v)) < 1e-9);
        }
    }
}

TEST_CASE("fixed sets really solve M(w) = conj(w) for random elements") {
    for (int trial = 0; trial < 60; ++trial) {
        MobiusMat S = random_sl2();
        EFixSet e = e_set(S);
        if (e.kind != EFixSet::Kind::FINITE) continue;
        for (const auto& w : e.points) {
            ExtC img = mobius_apply(S, w);
            CHECK(chordal(img, lgq::conj(w)) < 1e-7);
        }
    }
}

TEST_CASE("circline through three points") {
    SUBCASE("generic circle") {
        Circline c = circline_through(ExtC(C{1, 0}), ExtC(C{0, 1}), ExtC(C{-1, 0}));
        CHECK(!c.is_line);
        CHECK(std::abs(c.center) < 1e-12);
        CHECK(testutil::close(c.radius, 1.0, 1e-12));
        CHECK(circline_dist(c, ExtC(C{0, -1})) < 1e-12);
    }
    SUBCASE("collinear points give a line") {
        Circline c = circline_through(ExtC(C{0, 0}), ExtC(C{1, 1}), ExtC(C{2, 2}));
        CHECK(c.is_line);
        CHECK(circline_dist(c, ExtC(C{-3, -3})) < 1e-12);
        CHECK(circline_dist(c, ExtC(C{0, 1})) > 1e-3);
    }
    SUBCASE("point at infinity forces a line") {
        Circline c = circline_through(ExtC(C{0, 2}), ExtC(C{1, 2}), ExtC::infinity());
        CHECK(c.is_line);
        CHECK(circline_dist(c, ExtC(C{5, 2})) < 1e-12);
    }
    SUBCASE("coincident points are rejected") {
        CHECK_THROWS_WITH_AS(circline_through(ExtC(C{1, 0}), ExtC(C{1, 0}), ExtC(C{0, 1})),
                             doctest::Contains("DEGENERATE_INPUT"), Error);
    }
}
