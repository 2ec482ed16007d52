#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "lgq/error.hpp"
#include "lgq/extc.hpp"

namespace lgq {

/// Vector in R^{3,1}, signature (+,+,+,-): <u,v> = u1 v1 + u2 v2 + u3 v3 - u4 v4.
struct Vec4 {
    std::array<double, 4> a{0, 0, 0, 0};

    Vec4() = default;
    Vec4(double x1, double x2, double x3, double x4) : a{x1, x2, x3, x4} {}
    double& operator[](int i) { return a[i]; }
    double operator[](int i) const { return a[i]; }

    Vec4 operator+(const Vec4& o) const { return {a[0] + o[0], a[1] + o[1], a[2] + o[2], a[3] + o[3]}; }
    Vec4 operator-(const Vec4& o) const { return {a[0] - o[0], a[1] - o[1], a[2] - o[2], a[3] - o[3]}; }
    Vec4 operator*(double s) const { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }
    Vec4 operator-() const { return {-a[0], -a[1], -a[2], -a[3]}; }
};

/// Vector in C^{3,1} (same quadratic form, complex-bilinear or hermitian).
struct CVec4 {
    std::array<C, 4> a{C{0}, C{0}, C{0}, C{0}};

    CVec4() = default;
    CVec4(C z1, C z2, C z3, C z4) : a{z1, z2, z3, z4} {}
    CVec4(const Vec4& v) : a{C(v[0]), C(v[1]), C(v[2]), C(v[3])} {}
    C& operator[](int i) { return a[i]; }
    C operator[](int i) const { return a[i]; }

    CVec4 operator+(const CVec4& o) const { return {a[0] + o[0], a[1] + o[1], a[2] + o[2], a[3] + o[3]}; }
    CVec4 operator-(const CVec4& o) const { return {a[0] - o[0], a[1] - o[1], a[2] - o[2], a[3] - o[3]}; }
    CVec4 operator*(C s) const { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }
};

inline CVec4 conj(const CVec4& z) {
    return {std::conj(z[0]), std::conj(z[1]), std::conj(z[2]), std::conj(z[3])};
}

inline Vec4 real(const CVec4& z) { return {z[0].real(), z[1].real(), z[2].real(), z[3].real()}; }
inline Vec4 imag(const CVec4& z) { return {z[0].imag(), z[1].imag(), z[2].imag(), z[3].imag()}; }

/// Minkowski inner product, signature (+,+,+,-).
inline double mink_inner(const Vec4& u, const Vec4& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3];
}

/// Complex-bilinear extension <z,w> (no conjugation).
inline C cmink_bilinear(const CVec4& z, const CVec4& w) {
    return z[0] * w[0] + z[1] * w[1] + z[2] * w[2] - z[3] * w[3];
}

/// Pseudo-hermitian form (z,w) = <z, conj(w)>; (z,z) is real.
inline C cmink_hermitian(const CVec4& z, const CVec4& w) {
    return cmink_bilinear(z, conj(w));
}

inline double euclid_norm2(const Vec4& u) {
    return u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3];
}
inline double euclid_norm(const Vec4& u) { return std::sqrt(euclid_norm2(u)); }

inline double cnorm2(const CVec4& z) {
    return std::norm(z[0]) + std::norm(z[1]) + std::norm(z[2]) + std::norm(z[3]);
}
inline double cnorm(const CVec4& z) { return std::sqrt(cnorm2(z)); }

/// Simple bivector (element of Λ²R^{3,1}), components ordered
/// (12, 13, 14, 23, 24, 34).
struct Bivec {
    std::array<double, 6> b{0, 0, 0, 0, 0, 0};
    double& operator[](int i) { return b[i]; }
    double operator[](int i) const { return b[i]; }
};

inline Bivec wedge(const Vec4& u, const Vec4& v) {
    Bivec w;
    w[0] = u[0] * v[1] - u[1] * v[0]; // 12
    w[1] = u[0] * v[2] - u[2] * v[0]; // 13
    w[2] = u[0] * v[3] - u[3] * v[0]; // 14
    w[3] = u[1] * v[2] - u[2] * v[1]; // 23
    w[4] = u[1] * v[3] - u[3] * v[1]; // 24
    w[5] = u[2] * v[3] - u[3] * v[2]; // 34
    return w;
}

/// Induced inner product on Λ²: <u∧v, x∧y> = <u,x><v,y> - <u,y><v,x>.
/// Diagonal in the coordinate basis with signs (+,+,-,+,-,-).
inline double bivec_inner(const Bivec& p, const Bivec& q) {
    static constexpr double sgn[6] = {1, 1, -1, 1, -1, -1};
    double s = 0;
    for (int i = 0; i < 6; ++i) s += sgn[i] * p[i] * q[i];
    return s;
}

inline double bivec_norm2_euclid(const Bivec& p) {
    double s = 0;
    for (int i = 0; i < 6; ++i) s += p[i] * p[i];
    return s;
}

enum class CausalType { SPACELIKE, TIMELIKE, LIGHTLIKE, ZERO };

const char* to_string(CausalType t);

/// Causal character of u with a scale-relative tolerance:
/// ZERO if |u| <= tol, LIGHTLIKE if |<u,u>| <= tol * |u|^2 (euclidean), else sign.
CausalType classify_vector(const Vec4& u, double tol = 1e-9);

/// Proper orthochronous Lorentz transform. Constructed only through frames,
/// rotations, boosts and composition, so membership in SO+(3,1) is by
/// construction (and checkable via is_lorentz()).
struct LorentzMat {
    // m[i][j], acts as (Mu)_i = sum_j m[i][j] u_j
    std::array<std::array<double, 4>, 4> m{};

    static LorentzMat identity();
    /// Rotation by angle in the spatial (i,j) coordinate plane, 0 <= i < j <= 2.
    static LorentzMat rotation(int i, int j, double angle);
    /// Boost of rapidity chi in the (axis, 4) plane, axis in {0,1,2}.
    static LorentzMat boost(int axis, double chi);

    LorentzMat operator*(const LorentzMat& o) const;
    Vec4 operator*(const Vec4& u) const;
    CVec4 operator*(const CVec4& z) const;
    LorentzMat inverse() const; // eta * M^T * eta

    /// Max deviation from M^T eta M = eta.
    double lorentz_defect() const;
    bool is_lorentz(double tol = 1e-9) const;
    double det() const;
};

/// Build sigma in SO+(3,1) with sigma(e_i) = epsilon_i from an oriented,
/// time-oriented Minkowski-orthonormal frame (e1,e2,e3 spacelike, e4 timelike
/// future-pointing). Errors: NON_ORTHONORMAL, WRONG_ORIENTATION, TIME_REVERSING.
LorentzMat lorentz_from_frame(const Vec4& e1, const Vec4& e2, const Vec4& e3, const Vec4& e4,
                              double tol = 1e-9);

/// Inverse stereographic projection from the point (0,0,-1): lifts w in
/// C ∪ {∞} to the null vector (P^{-1}(w), 1) with P^{-1}(w) on S².
/// w = ∞ maps to (0,0,-1,1).
Vec4 stereographic(const ExtC& w);

/// Forward projection: unit 3-vector (x1,x2,x3) (with x4 ignored/assumed 1)
/// back to C ∪ {∞}. Errors: NOT_UNIT_SPHERE if x1²+x2²+x3² deviates from 1.
ExtC stereographic_inv(const Vec4& x, double tol = 1e-9);

} // namespace lgq
