#pragma once

#include <array>
#include <vector>

#include "lgq/linalg.hpp"
#include "lgq/mobius.hpp"

namespace lgq {

/// Realification of the antilinear map v -> conj(S v) on C², acting on
/// (Re v, Im v) in R⁴. Block form [[A, -B], [-B, -A]] for S = A + iB.
struct RealMat4 {
    std::array<std::array<double, 4>, 4> m{};

    std::array<double, 4> operator*(const std::array<double, 4>& v) const;
    RealMat4 operator*(const RealMat4& o) const;
    RealMat4 operator-(const RealMat4& o) const;
    static RealMat4 identity();
    double trace() const { return m[0][0] + m[1][1] + m[2][2] + m[3][3]; }
};

RealMat4 rmat(const MobiusMat& S);

/// A positive real r with S v = r conj(v) for some v != 0, together with the
/// real dimension of ker(R_S - r I) and conjugate-eigenvector representatives.
struct ConjEigenPair {
    double r = 0;
    int dim = 0;
    std::vector<std::array<C, 2>> vectors;
};

/// All positive real conjugate eigenvalues, largest first. Uses the closed-form
/// factorization of the characteristic quartic x⁴ - τx² + 1, τ = tr(R_S²)/2
/// (the spectrum is symmetric under negation and conjugation).
std::vector<ConjEigenPair> conj_eigen(const MobiusMat& S, double tol = 1e-9);

enum class ConjTag { DIAG, ROTATION, UNIPOTENT };
const char* to_string(ConjTag t);

/// Canonical form under conjugate similarity S ~ ± conj(T) S T^{-1}:
///   DIAG(u):     diag(e^u, e^-u), u >= 0  (u = 0 is the identity class)
///   ROTATION(a): [[cos a, sin a], [-sin a, cos a]], a in (0, pi/2]
///   UNIPOTENT:   [[1, 1], [0, 1]]
/// `witness` satisfies sign * conj(witness) * canonical * witness^{-1} = S.
struct ConjClass {
    ConjTag tag = ConjTag::DIAG;
    double param = 0; // u for DIAG, alpha for ROTATION, 0 for UNIPOTENT
    MobiusMat canonical;
    MobiusMat witness;
    int sign = 1; // +1 or -1
};

/// Near the boundary |lambda - 1| < max(1e-8, noise estimate) the class is
/// decided by the eigenspace-dimension test (dim ker(R_S - I): 2 -> DIAG(0),
/// 1 -> UNIPOTENT) instead of the raw eigenvalue.
ConjClass conj_canonical(const MobiusMat& S);

/// Same tag and parameter within tol.
bool conj_similar(const MobiusMat& S1, const MobiusMat& S2, double tol = 1e-9);

/// A circle or line in C (boundary-free description of a circline).
struct Circline {
    bool is_line = false;
    C center{0, 0}; // circle
    double radius = 0;
    C point{0, 0}, dir{1, 0}; // line: point + t * dir, |dir| = 1
};

/// Fixed set E_S = {w : M_S(w) = conj(w)} on the sphere: a finite set
/// (size 0, 1 or 2) or a full circline (identity class).
struct EFixSet {
    enum class Kind { FINITE, CIRCLINE } kind = Kind::FINITE;
    std::vector<ExtC> points;
    Circline circline;
};

EFixSet e_set(const MobiusMat& S, double tol = 1e-9);

/// Circline through three distinct sphere points (at most one at infinity).
Circline circline_through(const ExtC& p1, const ExtC& p2, const ExtC& p3, double tol = 1e-9);

/// Signed distance diagnostic: chordal distance from w to the circline.
double circline_dist(const Circline& c, const ExtC& w);

} // namespace lgq
