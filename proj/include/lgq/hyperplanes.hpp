#pragma once

#include <vector>

#include "lgq/conjsim.hpp"
#include "lgq/quadric.hpp"

namespace lgq {

/// Orbit tags for hyperplane poles [A] in CP^{2,1} under SO+(3,1).
/// TOTALLY_REAL_NULL is listed for completeness; a totally-real null pole
/// satisfies <A,A> = 0 and is therefore reported IN_Q_NULLBOUNDARY (same
/// orbit, same canonical representative).
enum class HypTag {
    IN_Q_PLUS,
    IN_Q_NULLBOUNDARY,
    TOTALLY_REAL_SPACE,
    TOTALLY_REAL_TIME,
    TOTALLY_REAL_NULL,
    HYPERBOLIC,
    ELLIPTIC,
    PARABOLIC,
};
const char* to_string(HypTag t);

/// Value of |<A,A>| / (A, conj A): positive-real numerator over a signed real
/// denominator, so the result is signed; `infinite` when the denominator
/// vanishes but the numerator does not.
struct InvariantI {
    double value = 0;
    bool infinite = false;
};

/// Errors: INDETERMINATE when both <A,A> and (A, conj A) vanish.
InvariantI invariant_I(const CVec4& A, double tol = 1e-9);

struct HyperplaneClass {
    HypTag tag = HypTag::PARABOLIC;
    double param = 0; // u >= 0 for HYPERBOLIC, alpha in (0, pi/2) for ELLIPTIC
    ProjPoint canonical;
    InvariantI invariant;
    bool invariant_defined = true; // false only on the null boundary
};

/// Orbit classification of [A]:
///  - on the quadric: IN_Q_PLUS / IN_Q_NULLBOUNDARY by the sign of (A, conj A);
///  - else rotate A by e^{i theta}, tan 2theta = -2<X,Y>/(<X,X>-<Y,Y>), to get
///    <X',Y'> = 0; linearly dependent X',Y' means totally real (classify the
///    nonzero vector); otherwise the sign of <X'∧Y', X'∧Y'> picks
///    HYPERBOLIC / PARABOLIC / ELLIPTIC, with u, alpha read off invariant_I
///    (I = sech 2u, sec 2alpha).
HyperplaneClass classify_A(const CVec4& A, double tol = 1e-9);

/// Graph coefficient matrix of the hyperplane: on H_A, w2 = M_S(w1) with
///   S ~ [[a1 - i a2, a3 - a4], [a3 + a4, -(a1 + i a2)]],
/// normalized to det 1 (pre-normalization det is -<A,A>).
/// Errors: A_ON_QUADRIC when <A,A> = 0.
MobiusMat mobius_from_A(const CVec4& A, double tol = 1e-9);

/// Inverse direction: A = (a - d, i(a + d), b + c, c - b); satisfies
/// mobius_from_A(A_from_mobius(S)) = ±S.
CVec4 A_from_mobius(const MobiusMat& S);

/// A 2x2 complex matrix without the unit-determinant normalization (used for
/// algebra elements).
struct MobiusMatFree {
    C a{0}, b{0}, c{0}, d{0};
};

/// Trace-free matrices X in sl(2,C) with conj(X) S - S X = 0, as an
/// orthonormal real basis. Dimensions: 3 for the identity class (sl(2,R)
/// conjugate) and the rotation pi/2 class (su(2) conjugate), else 1.
struct SymmetryAlgebra {
    int dim = 0;
    std::vector<MobiusMatFree> basis;
};

SymmetryAlgebra symmetry_algebra(const MobiusMat& S, double tol = 1e-7);

/// The five canonical hyperplane metrics. `param` is u for CASE_III and
/// alpha for CASE_IV, ignored otherwise.
enum class MetricCase { CASE_I, CASE_II, CASE_III, CASE_IV, CASE_V };
const char* to_string(MetricCase m);

/// Signed conformal factor lambda(point) of g = lambda * |dcoord|² in the
/// case's natural coordinates:
///  I  (w in C \ R):    -1 / (Im w)²            [coord w]
///  II (w in C):        4 / (1 + |w|²)²          [coord w]
///  III (w in C*):      Re 4/(e^{-u-i th} - e^{u+i th})², th = arg w   [coord log w]
///  IV (w in C*):       -Re 4/(e^{-t-i a} - e^{t+i a})², t = log|w|    [coord log w]
///  V  (w in C):        Re 4/(1 + 2i Im w)²      [coord w]
/// Errors: OUT_OF_DOMAIN.
double hyperplane_metric(MetricCase mc, double param, C point);

struct AreaResult {
    enum class Verdict { FINITE, DIVERGES, INCONCLUSIVE } verdict = Verdict::INCONCLUSIVE;
    double value = 0;        // unsigned area of the last exhaustion stage
    double signed_value = 0; // signed integral of lambda on the same stage
    std::vector<double> stages;
};
const char* to_string(AreaResult::Verdict v);

/// Total area by adaptive quadrature of |lambda| over an exhaustion
/// E_1 ⊂ ... ⊂ E_kmax of the case's domain. FINITE when successive stages are
/// Cauchy (differences < 1e-4); DIVERGES when stage kmax >= kmax * stage 1 > 0.
/// The signed integral is reported alongside (for Case IV it equals 4π for
/// every alpha; the unsigned area equals 4π iff alpha >= pi/4).
AreaResult hyperplane_total_area(MetricCase mc, double param, int kmax = 8);

} // namespace lgq
