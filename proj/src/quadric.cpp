#include "lgq/quadric.hpp"

#include <cmath>

namespace lgq {

ProjPoint::ProjPoint(const CVec4& z) {
    int k = 0;
    double best = -1;
    for (int i = 0; i < 4; ++i)
        if (std::abs(z[i]) > best) {
            best = std::abs(z[i]);
            k = i;
        }
    if (best == 0.0) throw Error(ErrorCode::DEGENERATE_INPUT, "zero vector has no projective class");
    C s = z[k];
    rep = {z[0] / s, z[1] / s, z[2] / s, z[3] / s};
}

bool ProjPoint::approx_equal(const ProjPoint& o, double tol) const {
    // 1 - |<a,b>|²/(|a|²|b|²) is the Fubini-Study sine²; robust to pivot flips.
    C ip{0, 0};
    for (int i = 0; i < 4; ++i) ip += rep[i] * std::conj(o.rep[i]);
    double c2 = std::norm(ip) / (cnorm2(rep) * cnorm2(o.rep));
    return 1.0 - c2 <= tol;
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::NOT_IN_Q: return "NOT_IN_Q";
        case Membership::IN_Q: return "IN_Q";
        case Membership::IN_Q_PLUS: return "IN_Q_PLUS";
    }
    return "?";
}

Membership quadric_membership(const ProjPoint& p, double tol) {
    const CVec4& z = p.rep;
    double scale = cnorm2(z);
    C q = cmink_bilinear(z, z);
    if (std::abs(q) > tol * scale) return Membership::NOT_IN_Q;
    double h = cmink_hermitian(z, z).real();
    return h > tol * scale ? Membership::IN_Q_PLUS : Membership::IN_Q;
}

ChartPair psi_chart(const ProjPoint& p, double tol) {
    if (quadric_membership(p, tol) == Membership::NOT_IN_Q)
        throw Error(ErrorCode::NOT_ON_QUADRIC, "psi_chart needs <z,z> = 0");
    const CVec4& z = p.rep;
    double scale = cnorm(z);
    C den = z[2] + z[3];
    C za = z[0] + C{0, 1} * z[1]; // z1 + i z2
    C zb = z[0] - C{0, 1} * z[1]; // z1 - i z2
    if (std::abs(den) > tol * scale)
        return {ExtC(za / den), ExtC(zb / den)};
    // z3 + z4 = 0 on the quadric forces za * zb = z1² + z2² = z3² - z4² = -(z3+z4)(...)≈0,
    // so at least one of za, zb vanishes.
    bool za0 = std::abs(za) <= tol * scale;
    bool zb0 = std::abs(zb) <= tol * scale;
    if (za0 && zb0) return {ExtC::infinity(), ExtC::infinity()};
    if (za0) return {ExtC((z[3] - z[2]) / zb), ExtC::infinity()};
    return {ExtC::infinity(), ExtC((z[3] - z[2]) / za)};
}

ProjPoint psi_inverse(const ChartPair& c) {
    if (c.w1.inf && c.w2.inf) return ProjPoint(CVec4{C{0}, C{0}, C{-1}, C{1}});
    if (c.w2.inf) {
        C w1 = c.w1.v;
        return ProjPoint(CVec4{C{1}, C{0, 1}, -w1, w1});
    }
    if (c.w1.inf) {
        C w2 = c.w2.v;
        return ProjPoint(CVec4{C{1}, C{0, -1}, -w2, w2});
    }
    C w1 = c.w1.v, w2 = c.w2.v;
    return ProjPoint(CVec4{w1 + w2, C{0, -1} * (w1 - w2), C{1} - w1 * w2, C{1} + w1 * w2});
}

double hermitian_gap(const ChartPair& c) {
    if (!c.w1.inf && !c.w2.inf) {
        C d = c.w2.v - std::conj(c.w1.v);
        return 2.0 * std::norm(d);
    }
    // Reciprocal chart (z -> canonical representative of (1/w1, 1/w2)):
    // gap = 2|1/w2 - conj(1/w1)|², with 1/∞ = 0.
    C r1 = c.w1.inf ? C{0} : 1.0 / c.w1.v;
    C r2 = c.w2.inf ? C{0} : 1.0 / c.w2.v;
    return 2.0 * std::norm(r2 - std::conj(r1));
}

ProjPoint plane_to_proj(const Vec4& u, const Vec4& v, double tol) {
    if (std::abs(mink_inner(u, u) - 1) > tol || std::abs(mink_inner(v, v) - 1) > tol ||
        std::abs(mink_inner(u, v)) > tol)
        throw Error(ErrorCode::NOT_ORTHONORMAL, "need an orthonormal spacelike pair");
    CVec4 z;
    for (int i = 0; i < 4; ++i) z[i] = C{u[i], -v[i]};
    return ProjPoint(z);
}

std::pair<Vec4, Vec4> null_pair(const ChartPair& c, double tol) {
    if (approx(conj(c.w1), c.w2, tol))
        throw Error(ErrorCode::DEGENERATE_PAIR, "w2 = conj(w1) has no transverse null pair");
    return {stereographic(c.w1), stereographic(conj(c.w2))};
}

double metric_g(const ChartPair& c, C dw1, C dw2, double tol) {
    if (c.w1.inf || c.w2.inf)
        throw Error(ErrorCode::OUT_OF_DOMAIN, "metric_g needs finite chart entries");
    C w1 = c.w1.v, w2 = c.w2.v;
    // identical formula in the reciprocal chart; switch when both moduli > 1
    if (std::abs(w1) > 1.0 && std::abs(w2) > 1.0) {
        dw1 = -dw1 / (w1 * w1);
        dw2 = -dw2 / (w2 * w2);
        w1 = 1.0 / w1;
        w2 = 1.0 / w2;
    }
    C den = std::conj(w1) - w2;
    double scale = (1.0 + std::abs(w1)) * (1.0 + std::abs(w2));
    if (std::abs(den) < tol * scale)
        throw Error(ErrorCode::DEGENERATE_PAIR, "metric degenerates on w2 = conj(w1)");
    return (4.0 * std::conj(dw1) * dw2 / (den * den)).real();
}

} // namespace lgq
