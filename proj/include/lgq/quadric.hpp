#pragma once

#include <utility>

#include "lgq/minkowski.hpp"

namespace lgq {

/// Point of CP^{2,1} stored as a normalized representative: the largest-modulus
/// component is scaled to 1 (then the vector is unique up to the tolerance).
struct ProjPoint {
    CVec4 rep;

    ProjPoint() = default;
    explicit ProjPoint(const CVec4& z);

    /// Projective equality via the standard-hermitian angle between reps.
    bool approx_equal(const ProjPoint& o, double tol = 1e-9) const;
};

/// Point of (C ∪ {∞})².
struct ChartPair {
    ExtC w1, w2;
};

enum class Membership { NOT_IN_Q, IN_Q, IN_Q_PLUS };
const char* to_string(Membership m);

/// Membership of [z] in the quadric Q = {<z,z> = 0} and the open piece
/// Q+ = Q ∩ {(z, conj z) > 0}. Scale-relative tolerance.
Membership quadric_membership(const ProjPoint& p, double tol = 1e-9);

/// Chart on the quadric:
///   w1 = (z1 + i z2)/(z3 + z4),  w2 = (z1 - i z2)/(z3 + z4),
/// with limiting branches when z3 + z4 = 0:
///   z1 + i z2 = 0: (w1, ∞) with w1 = (z4 - z3)/(z1 - i z2)
///   z1 - i z2 = 0: (∞, w2) with w2 = (z4 - z3)/(z1 + i z2)
///   both zero:     (∞, ∞)
/// Errors: NOT_ON_QUADRIC.
ChartPair psi_chart(const ProjPoint& p, double tol = 1e-9);

/// Inverse chart: [w1 + w2, -i(w1 - w2), 1 - w1 w2, 1 + w1 w2], with the
/// infinity branches (w1,∞) -> [(1, i, -w1, w1)], (∞,w2) -> [(1, -i, -w2, w2)],
/// (∞,∞) -> [(0,0,-1,1)].
ProjPoint psi_inverse(const ChartPair& c);

/// (z, conj z) of the canonical inverse-chart representative; equals
/// 2|w2 - conj(w1)|² for finite pairs, and the corresponding reciprocal-chart
/// expression when an entry is ∞.
double hermitian_gap(const ChartPair& c);

/// Projectivization of an oriented spacelike 2-plane: [u - i v] for an
/// orthonormal spacelike pair (u, v). Errors: NOT_ORTHONORMAL.
ProjPoint plane_to_proj(const Vec4& u, const Vec4& v, double tol = 1e-9);

/// The pair of future null directions attached to a chart point:
///   y  = (P^{-1}(w1), 1),  y* = (P^{-1}(conj w2), 1).
/// Errors: DEGENERATE_PAIR when w2 = conj(w1) (chordal tolerance).
std::pair<Vec4, Vec4> null_pair(const ChartPair& c, double tol = 1e-9);

/// Canonical metric on Q+ in the chart: g = Re[4 d(conj w1) d w2 / (conj(w1) - w2)²]
/// evaluated on the tangent pair (dw1, dw2). The same formula holds in the
/// reciprocal chart (1/w1, 1/w2); the better-conditioned chart is used when
/// both entries are finite and large. Errors: DEGENERATE_PAIR on the locus
/// w2 = conj(w1), OUT_OF_DOMAIN if an entry is ∞ (differentials would be
/// meaningless there; move to the reciprocal chart yourself instead).
double metric_g(const ChartPair& c, C dw1, C dw2, double tol = 1e-12);

} // namespace lgq
