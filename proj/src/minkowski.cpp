#include "lgq/minkowski.hpp"

#include <cmath>

namespace lgq {

const char* to_string(CausalType t) {
    switch (t) {
        case CausalType::SPACELIKE: return "SPACELIKE";
        case CausalType::TIMELIKE: return "TIMELIKE";
        case CausalType::LIGHTLIKE: return "LIGHTLIKE";
        case CausalType::ZERO: return "ZERO";
    }
    return "?";
}

CausalType classify_vector(const Vec4& u, double tol) {
    double n2 = euclid_norm2(u);
    if (std::sqrt(n2) <= tol) return CausalType::ZERO;
    double q = mink_inner(u, u);
    if (std::abs(q) <= tol * n2) return CausalType::LIGHTLIKE;
    return q > 0 ? CausalType::SPACELIKE : CausalType::TIMELIKE;
}

LorentzMat LorentzMat::identity() {
    LorentzMat M;
    for (int i = 0; i < 4; ++i) M.m[i][i] = 1.0;
    return M;
}

LorentzMat LorentzMat::rotation(int i, int j, double angle) {
    LorentzMat M = identity();
    double c = std::cos(angle), s = std::sin(angle);
    M.m[i][i] = c;
    M.m[j][j] = c;
    M.m[i][j] = -s;
    M.m[j][i] = s;
    return M;
}

LorentzMat LorentzMat::boost(int axis, double chi) {
    LorentzMat M = identity();
    double ch = std::cosh(chi), sh = std::sinh(chi);
    M.m[axis][axis] = ch;
    M.m[3][3] = ch;
    M.m[axis][3] = sh;
    M.m[3][axis] = sh;
    return M;
}

LorentzMat LorentzMat::operator*(const LorentzMat& o) const {
    LorentzMat r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += m[i][k] * o.m[k][j];
            r.m[i][j] = s;
        }
    return r;
}

Vec4 LorentzMat::operator*(const Vec4& u) const {
    Vec4 r;
    for (int i = 0; i < 4; ++i) {
        double s = 0;
        for (int j = 0; j < 4; ++j) s += m[i][j] * u[j];
        r[i] = s;
    }
    return r;
}

CVec4 LorentzMat::operator*(const CVec4& z) const {
    CVec4 r;
    for (int i = 0; i < 4; ++i) {
        C s{0, 0};
        for (int j = 0; j < 4; ++j) s += m[i][j] * z[j];
        r[i] = s;
    }
    return r;
}

LorentzMat LorentzMat::inverse() const {
    // M^{-1} = eta M^T eta with eta = diag(1,1,1,-1)
    LorentzMat r;
    auto eta = [](int i) { return i == 3 ? -1.0 : 1.0; };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.m[i][j] = eta(i) * m[j][i] * eta(j);
    return r;
}

double LorentzMat::lorentz_defect() const {
    auto eta = [](int i) { return i == 3 ? -1.0 : 1.0; };
    double worst = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += m[k][i] * eta(k) * m[k][j];
            double want = (i == j) ? eta(i) : 0.0;
            worst = std::max(worst, std::abs(s - want));
        }
    return worst;
}

bool LorentzMat::is_lorentz(double tol) const { return lorentz_defect() <= tol; }

double LorentzMat::det() const {
    // expansion via 2x2 minors (Laplace on first two rows)
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    double d = 0;
    d += minor2(0, 1, 0, 1) * minor2(2, 3, 2, 3);
    d -= minor2(0, 1, 0, 2) * minor2(2, 3, 1, 3);
    d += minor2(0, 1, 0, 3) * minor2(2, 3, 1, 2);
    d += minor2(0, 1, 1, 2) * minor2(2, 3, 0, 3);
    d -= minor2(0, 1, 1, 3) * minor2(2, 3, 0, 2);
    d += minor2(0, 1, 2, 3) * minor2(2, 3, 0, 1);
    return d;
}

LorentzMat lorentz_from_frame(const Vec4& e1, const Vec4& e2, const Vec4& e3, const Vec4& e4,
                              double tol) {
    const Vec4* e[4] = {&e1, &e2, &e3, &e4};
    auto want = [](int i, int j) { return i != j ? 0.0 : (i == 3 ? -1.0 : 1.0); };
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (std::abs(mink_inner(*e[i], *e[j]) - want(i, j)) > tol)
                throw Error(ErrorCode::NON_ORTHONORMAL, "frame Gram matrix is not diag(1,1,1,-1)");
    if (e4[3] < 0) throw Error(ErrorCode::TIME_REVERSING, "e4 is past-pointing");

    LorentzMat F; // columns are the frame vectors
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) F.m[i][j] = (*e[j])[i];
    if (F.det() < 0) throw Error(ErrorCode::WRONG_ORIENTATION, "frame is negatively oriented");
    return F.inverse(); // sigma e_i = epsilon_i
}

Vec4 stereographic(const ExtC& w) {
    if (w.inf) return {0, 0, -1, 1};
    double x = w.v.real(), y = w.v.imag();
    double d = 1.0 + x * x + y * y;
    return {2 * x / d, 2 * y / d, (1 - x * x - y * y) / d, 1.0};
}

ExtC stereographic_inv(const Vec4& x, double tol) {
    double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (std::abs(n2 - 1.0) > tol)
        throw Error(ErrorCode::NOT_UNIT_SPHERE, "spatial part is not on S^2");
    if (1.0 + x[2] <= tol) return ExtC::infinity();
    return ExtC(C{x[0], x[1]} / (1.0 + x[2]));
}

} // namespace lgq
