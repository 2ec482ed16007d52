#include "lgq/conjsim.hpp"

#include <algorithm>
#include <cmath>

namespace lgq {

const char* to_string(ConjTag t) {
    switch (t) {
        case ConjTag::DIAG: return "DIAG";
        case ConjTag::ROTATION: return "ROTATION";
        case ConjTag::UNIPOTENT: return "UNIPOTENT";
    }
    return "?";
}

std::array<double, 4> RealMat4::operator*(const std::array<double, 4>& v) const {
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
    return r;
}

RealMat4 RealMat4::operator*(const RealMat4& o) const {
    RealMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

RealMat4 RealMat4::operator-(const RealMat4& o) const {
    RealMat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
    return r;
}

RealMat4 RealMat4::identity() {
    RealMat4 r;
    for (int i = 0; i < 4; ++i) r.m[i][i] = 1.0;
    return r;
}

RealMat4 rmat(const MobiusMat& S) {
    // conj(S(x+iy)) = (Ax - By) - i(Bx + Ay) for S = A + iB
    RealMat4 R;
    double A[2][2] = {{S.a.real(), S.b.real()}, {S.c.real(), S.d.real()}};
    double B[2][2] = {{S.a.imag(), S.b.imag()}, {S.c.imag(), S.d.imag()}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            R.m[i][j] = A[i][j];
            R.m[i][j + 2] = -B[i][j];
            R.m[i + 2][j] = -B[i][j];
            R.m[i + 2][j + 2] = -A[i][j];
        }
    return R;
}

namespace {

std::vector<std::vector<double>> to_rows(const RealMat4& R) {
    std::vector<std::vector<double>> rows(4, std::vector<double>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = R.m[i][j];
    return rows;
}

std::array<C, 2> to_cvec(const std::vector<double>& v) {
    return {C{v[0], v[2]}, C{v[1], v[3]}};
}

double tau_of(const RealMat4& R) { return (R * R).trace() / 2.0; }

/// Scale/i-twist a column pair into a det-(+1) Moebius matrix; reports whether
/// the i-twist flipped the conjugate-similarity sign.
MobiusMat finish_witness(std::array<C, 2> v1, std::array<C, 2> v2, int& sign_flip) {
    C det = v1[0] * v2[1] - v2[0] * v1[1];
    sign_flip = 1;
    // det is real in exact arithmetic (forced by S T = conj(T) K, det K = 1)
    if (det.real() < 0) {
        // multiply T by i: det flips sign, conjugate-similarity sign flips
        v1 = {C{0, 1} * v1[0], C{0, 1} * v1[1]};
        v2 = {C{0, 1} * v2[0], C{0, 1} * v2[1]};
        det = -det;
        sign_flip = -1;
    }
    double mu = 1.0 / std::sqrt(std::abs(det.real()));
    return MobiusMat(v1[0] * mu, v2[0] * mu, v1[1] * mu, v2[1] * mu);
}

double witness_residual(const MobiusMat& S, const MobiusMat& T, const MobiusMat& K, int sign) {
    MobiusMat W = T.conj_entries().compose(K).compose(T.inverse());
    double s = (double)sign;
    return std::abs(W.a * s - S.a) + std::abs(W.b * s - S.b) + std::abs(W.c * s - S.c) +
           std::abs(W.d * s - S.d);
}

} // namespace

std::vector<ConjEigenPair> conj_eigen(const MobiusMat& S, double tol) {
    RealMat4 R = rmat(S);
    double tau = tau_of(R);
    std::vector<double> candidates;
    if (tau >= 2.0) {
        double disc = std::sqrt(std::max(0.0, tau * tau - 4.0));
        double y1 = (tau + disc) / 2.0;
        double r1 = std::sqrt(y1);
        candidates.push_back(r1);
        if (r1 - 1.0 > tol) candidates.push_back(1.0 / r1);
    }
    // tau < 2: all eigenvalues are non-real (e^{±i a} and negatives) -> none
    std::vector<ConjEigenPair> out;
    for (double r : candidates) {
        RealMat4 M = R;
        for (int i = 0; i < 4; ++i) M.m[i][i] -= r;
        auto basis = nullspace(to_rows(M), 1e-7);
        if (basis.empty()) continue;
        ConjEigenPair p;
        p.r = r;
        p.dim = (int)basis.size();
        for (auto& b : basis) p.vectors.push_back(to_cvec(b));
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.r > b.r; });
    return out;
}

ConjClass conj_canonical(const MobiusMat& S) {
    RealMat4 R = rmat(S);
    double tau = tau_of(R);
    ConjClass out;

    // distance of the leading eigenvalue from 1, and a noise-adaptive band
    double band = std::max(1e-8, std::sqrt(1e-13 * (1.0 + std::abs(tau))));
    double lam_dist;
    if (tau >= 2.0) {
        double y1 = (tau + std::sqrt(std::max(0.0, tau * tau - 4.0))) / 2.0;
        lam_dist = std::sqrt(y1) - 1.0;
    } else {
        double alpha = 0.5 * std::acos(std::clamp(tau / 2.0, -1.0, 1.0));
        lam_dist = std::abs(std::exp(C{0, alpha}) - C{1, 0});
    }

    auto ident = RealMat4::identity();

    if (lam_dist < band) {
        // boundary: eigenvalue 1 (up to noise); split by eigenspace dimension
        RealMat4 M = R - ident;
        auto ker = nullspace(to_rows(M), 1e-6);
        if ((int)ker.size() >= 2) {
            out.tag = ConjTag::DIAG;
            out.param = 0.0;
            out.canonical = MobiusMat(1, 0, 0, 1);
            int flip;
            out.witness = finish_witness(to_cvec(ker[0]), to_cvec(ker[1]), flip);
            out.sign = flip;
        } else {
            out.tag = ConjTag::UNIPOTENT;
            out.param = 0.0;
            out.canonical = MobiusMat(1, 1, 0, 1);
            RealMat4 M2 = M * M;
            auto k2 = nullspace(to_rows(M2), 1e-6);
            // choose u2 in ker((R-I)^2) with the largest (R-I)u2, set u1 = (R-I)u2
            std::vector<double> best_u1, best_u2;
            double best = -1;
            for (auto& w : k2) {
                std::array<double, 4> wv{w[0], w[1], w[2], w[3]};
                auto img = M * wv;
                double n = std::sqrt(img[0] * img[0] + img[1] * img[1] + img[2] * img[2] +
                                     img[3] * img[3]);
                if (n > best) {
                    best = n;
                    best_u2 = w;
                    best_u1 = {img[0], img[1], img[2], img[3]};
                }
            }
            if (best <= 0)
                throw Error(ErrorCode::DEGENERATE_INPUT, "could not build a unipotent witness");
            int flip;
            out.witness = finish_witness(to_cvec(best_u1), to_cvec(best_u2), flip);
            out.sign = flip;
        }
    } else if (tau > 2.0) {
        out.tag = ConjTag::DIAG;
        double y1 = (tau + std::sqrt(tau * tau - 4.0)) / 2.0;
        double u = 0.5 * std::log(y1);
        out.param = u;
        out.canonical = MobiusMat(std::exp(u), 0, 0, std::exp(-u));
        RealMat4 M1 = R, M2 = R;
        for (int i = 0; i < 4; ++i) {
            M1.m[i][i] -= std::exp(u);
            M2.m[i][i] -= std::exp(-u);
        }
        auto k1 = nullspace(to_rows(M1), 1e-6);
        auto k2 = nullspace(to_rows(M2), 1e-6);
        if (k1.empty() || k2.empty())
            throw Error(ErrorCode::DEGENERATE_INPUT, "eigenvector extraction failed");
        int flip;
        out.witness = finish_witness(to_cvec(k1[0]), to_cvec(k2[0]), flip);
        out.sign = flip;
    } else {
        out.tag = ConjTag::ROTATION;
        double alpha = 0.5 * std::acos(std::clamp(tau / 2.0, -1.0, 1.0));
        out.param = alpha;
        double ca = std::cos(alpha), sa = std::sin(alpha);
        out.canonical = MobiusMat(ca, sa, -sa, ca);
        // real 2-plane: ker(R^2 - 2 cos(a) R + I); then q = (cos(a) p - R p)/sin(a)
        RealMat4 Q = R * R;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                Q.m[i][j] += -2.0 * ca * R.m[i][j] + (i == j ? 1.0 : 0.0);
        auto plane = nullspace(to_rows(Q), 1e-6);
        if (plane.empty()) throw Error(ErrorCode::DEGENERATE_INPUT, "rotation plane not found");
        // pick the basis vector giving the best-conditioned T
        MobiusMat bestT;
        int bestflip = 1;
        double bestdet = -1;
        for (auto& pv : plane) {
            std::array<double, 4> p{pv[0], pv[1], pv[2], pv[3]};
            auto Rp = R * p;
            std::array<double, 4> q;
            for (int i = 0; i < 4; ++i) q[i] = (ca * p[i] - Rp[i]) / sa;
            auto v1 = to_cvec({p[0], p[1], p[2], p[3]});
            auto v2 = to_cvec({q[0], q[1], q[2], q[3]});
            C det = v1[0] * v2[1] - v2[0] * v1[1];
            if (std::abs(det) > bestdet) {
                int flip;
                MobiusMat T = finish_witness(v1, v2, flip);
                bestdet = std::abs(det);
                bestT = T;
                bestflip = flip;
            }
        }
        out.witness = bestT;
        out.sign = bestflip;
    }

    // the i-twist fixes the sign only up to the actual match; verify and adjust
    if (witness_residual(S, out.witness, out.canonical, out.sign) >
        witness_residual(S, out.witness, out.canonical, -out.sign))
        out.sign = -out.sign;
    return out;
}

bool conj_similar(const MobiusMat& S1, const MobiusMat& S2, double tol) {
    ConjClass c1 = conj_canonical(S1), c2 = conj_canonical(S2);
    if (c1.tag != c2.tag) return false;
    return std::abs(c1.param - c2.param) <= tol;
}

Circline circline_through(const ExtC& p1, const ExtC& p2, const ExtC& p3, double tol) {
    Circline out;
    const ExtC* pts[3] = {&p1, &p2, &p3};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (chordal(*pts[i], *pts[j]) < tol)
                throw Error(ErrorCode::DEGENERATE_INPUT,
                            "circline needs three distinct sphere points");
    int inf_at = -1;
    for (int i = 0; i < 3; ++i)
        if (pts[i]->inf) inf_at = i;
    if (inf_at >= 0) {
        C a = pts[(inf_at + 1) % 3]->v, b = pts[(inf_at + 2) % 3]->v;
        out.is_line = true;
        out.point = a;
        C d = b - a;
        out.dir = d / std::abs(d);
        return out;
    }
    C a = p1.v, b = p2.v, c = p3.v;
    // collinear test via cross product of (b-a), (c-a)
    C u = b - a, v = c - a;
    double cross = u.real() * v.imag() - u.imag() * v.real();
    double scale = std::abs(u) * std::abs(v);
    if (std::abs(cross) <= tol * std::max(scale, 1e-300)) {
        out.is_line = true;
        out.point = a;
        out.dir = u / std::abs(u);
        return out;
    }
    // circumcenter: solve |z-a|² = |z-b|² = |z-c|²
    double x1 = a.real(), y1 = a.imag(), x2 = b.real(), y2 = b.imag(), x3 = c.real(),
           y3 = c.imag();
    double d = 2 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2));
    double ux = ((x1 * x1 + y1 * y1) * (y2 - y3) + (x2 * x2 + y2 * y2) * (y3 - y1) +
                 (x3 * x3 + y3 * y3) * (y1 - y2)) /
                d;
    double uy = ((x1 * x1 + y1 * y1) * (x3 - x2) + (x2 * x2 + y2 * y2) * (x1 - x3) +
                 (x3 * x3 + y3 * y3) * (x2 - x1)) /
                d;
    out.is_line = false;
    out.center = {ux, uy};
    out.radius = std::abs(a - out.center);
    return out;
}

double circline_dist(const Circline& c, const ExtC& w) {
    if (c.is_line) {
        if (w.inf) return 0.0; // lines pass through ∞ on the sphere
        C rel = (w.v - c.point) / c.dir;
        double d = std::abs(rel.imag());
        // chordal-ish normalization so distances stay bounded
        return d / std::sqrt((1 + std::norm(w.v)) * (1 + d * d));
    }
    if (w.inf) return 1.0 / std::sqrt(1.0 + c.radius * c.radius);
    double d = std::abs(std::abs(w.v - c.center) - c.radius);
    return d / std::sqrt(1 + std::norm(w.v));
}

EFixSet e_set(const MobiusMat& S, double tol) {
    auto pairs = conj_eigen(S, tol);
    EFixSet out;
    for (auto& p : pairs) {
        if (p.dim >= 2) {
            // identity class: ratios sweep a full circline
            auto ratio = [](const std::array<C, 2>& v) {
                if (std::abs(v[1]) <= 1e-14 * std::abs(v[0])) return ExtC::infinity();
                return ExtC(v[0] / v[1]);
            };
            std::array<C, 2> vsum{p.vectors[0][0] + p.vectors[1][0],
                                  p.vectors[0][1] + p.vectors[1][1]};
            out.kind = EFixSet::Kind::CIRCLINE;
            out.circline = circline_through(ratio(p.vectors[0]), ratio(p.vectors[1]), ratio(vsum));
            out.points.clear();
            return out;
        }
        const auto& v = p.vectors[0];
        if (std::abs(v[1]) <= 1e-12 * std::abs(v[0]))
            out.points.push_back(ExtC::infinity());
        else
            out.points.push_back(ExtC(v[0] / v[1]));
    }
    out.kind = EFixSet::Kind::FINITE;
    return out;
}

} // namespace lgq
