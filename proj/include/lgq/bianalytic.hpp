#pragma once
/// Certified solving of f(w) = conj(w) for rational f = P/Q: the associated
/// bianalytic function F(w) = P(w) - conj(w) Q(w), winding numbers on
/// contours, quadtree root localization with interval exclusion bounds, local
/// indices, the index-sum identity (sum of indices = m - 1 when infinity is
/// not a solution), and the exceptional-value bound calculator.

#include <functional>
#include <vector>

#include "lgq/conjsim.hpp"
#include "lgq/mobius.hpp"

namespace lgq {

struct RationalFn {
    std::vector<C> P, Q; // coefficients, ascending degree
    int m = 0;           // max(deg P, deg Q)

    /// Trims negligible leading coefficients, rescales to unit max-norm, and
    /// enforces coprimality by polynomial GCD (tolerance 1e-10 on the
    /// coefficient max-norm).  Throws NONCOPRIME / DEGENERATE_INPUT.
    RationalFn(std::vector<C> P_, std::vector<C> Q_, double tol = 1e-10);

    int degP() const { return (int)P.size() - 1; }
    int degQ() const { return (int)Q.size() - 1; }
    C eval(C w) const;  // P(w)/Q(w)
    C F(C w) const;     // P(w) - conj(w) Q(w)
    C deriv(C w) const; // f'(w) = (P'Q - PQ')/Q^2
};

C poly_eval(const std::vector<C>& p, C w);
std::vector<C> poly_deriv(const std::vector<C>& p);

struct Contour {
    bool is_circle = true;
    C center{0, 0};
    double radius = 1; // circle
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1; // rectangle boundary

    static Contour circle(C center, double radius);
    static Contour rect(double x0, double x1, double y0, double y1);
    C point(double t) const; // t in [0,1), counterclockwise
};

/// Winding number of G around 0 along the contour.  Sampling starts at
/// `nodes` points and doubles until every argument step is below pi/2 and the
/// rounded value is stable under one more doubling.  Throws
/// CONTOUR_THROUGH_ZERO when the contour runs too close to a zero.
int winding(const std::function<C(C)>& G, const Contour& contour, int nodes = 256);

enum class InfinityGoal { EXCLUDE, INCLUDE };

struct NormalizedFn {
    RationalFn f;
    MobiusMat M; // w_original -> w_normalized; identity when moved == false
    bool moved = false;
};

/// EXCLUDE: returns data with infinity not a solution (deg P <= deg Q),
/// conjugating by a Mobius map that sends a non-solution point to infinity
/// when needed.  INCLUDE: returns data with a conjugate-fixed point at
/// infinity (deg P > deg Q), sending one solution to infinity.
NormalizedFn normalize_at_infinity(const RationalFn& f, InfinityGoal goal);

struct RootCertificate {
    C root;
    double box_x0 = 0, box_x1 = 0, box_y0 = 0, box_y1 = 0; // isolating box
    int index = 0;   // local index in {-1, 0, +1}
    int winding = 0; // winding on the isolating box boundary
    double residual = 0; // |F(root)| with unit-max-norm coefficients
    bool low_confidence = false; // index 0 tangency candidates
};

struct EfResult {
    enum class Kind { DISCRETE, CIRCLINE } kind = Kind::DISCRETE;
    std::vector<RootCertificate> roots; // original coordinates
    bool infinity_member = false;
    MobiusMat normalizer; // identity unless a conjugation was applied
    bool normalized = false;
    int index_sum = 0; // over finite roots of the normalized problem
    int m = 0;
    Circline circline; // kind == CIRCLINE only
};

/// Certified solution set of f(w) = conj(w).  m >= 2 runs the quadtree
/// subdivision solver (normalize so infinity is not a solution, outer radius
/// from the dominant-coefficient bound, winding tests per cell, interval
/// exclusion of winding-0 cells, Newton refinement, per-root isolating-box
/// indices).  m <= 1 is delegated: Mobius f goes through the conjugate
/// eigenvector machinery (possibly returning Kind::CIRCLINE), constant f is
/// solved directly.  Throws BUDGET_EXCEEDED if subdivision explodes.
EfResult solve_Ef(const RationalFn& f);

/// Local index of an isolated solution: +1 if |f'(root)| > 1, -1 if < 1,
/// winding on shrinking boxes when borderline.  Throws NOT_ISOLATED.
int local_index(const RationalFn& f, C root);

struct BoundsReport {
    int m = 0;
    int ef_count = 0; // |E_f| including infinity
    int index_sum = 0;
    int q1_lo = 0, q1_hi = 0; // exceptional-value window [|E_f|, m - |E_f| + 3]
    bool flat_forced_degree = false; // m >= 6
    bool flat_forced_count = false;  // |E_f| > (m+3)/2
    bool count_anomaly = false;      // |E_f| outside [m-1, (m+1)^2]
};

BoundsReport bounds_report(const RationalFn& f, const EfResult& ef);

} // namespace lgq
