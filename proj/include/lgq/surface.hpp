#pragma once
/// Surface meshing by integrating phi over a parameter grid, the dual minimal
/// immersion in R^4, total-curvature quadrature, and the Gauss-map pullback
/// consistency check against the ambient quadric metric.

#include <cstdint>

#include "lgq/quadric.hpp"
#include "lgq/wdata.hpp"

namespace lgq {

struct GridSpec {
    int nu = 64; // rows: y (rectangle) or log-radius (annulus)
    int nv = 64; // cols: x (rectangle) or angle (annulus)
};

struct SurfaceMesh {
    int nu = 0, nv = 0;
    std::vector<C> params;                 // row-major, nu*nv
    std::vector<Vec4> pos;                 // positions (x4 = 4th coordinate)
    std::vector<double> lambda2;           // metric factor; ds^2 = lambda2 |dz|^2
    std::vector<double> K;                 // Gauss curvature (NaN when undefined)
    std::vector<std::uint8_t> valid;       // vertex usable
    std::vector<std::array<int, 3>> faces; // triangles over valid cells
    bool multivalued = false;              // integrated across a cut
    bool dual = false;                     // positions are the R^4 immersion
    double diameter() const;
};

/// Positions x = Re \int phi accumulated along grid edges (8-node
/// Gauss-Legendre per edge) from a base vertex, spanning the valid vertices by
/// breadth-first search.  Real periods on the declared (or synthesized,
/// one per puncture) loops must vanish to 1e-6, else PERIOD_OBSTRUCTION —
/// unless allow_cut, which builds the mesh on the cut domain and marks it
/// multivalued.  Path-independence is verified against a re-ordered traversal
/// at 10 sample vertices.  dual=true integrates phi* = (phi1,phi2,phi3,i*phi4)
/// (minimal immersion in R^4).
SurfaceMesh integrate_surface(const WData& w, GridSpec grid, Vec4 base = {0, 0, 0, 0},
                              bool allow_cut = false, bool dual = false);

/// Coefficients of phi* = (phi1, phi2, phi3, i*phi4).
CVec4 phi_dual(const WData& w, C z);

/// Conformal factor of the dual metric: (ds*)^2 = ds^2 + 2|phi4|^2 |dz|^2
///                                             = 2(1+|psi1|^2)(1+|psi2|^2)|f|^2 |dz|^2.
double dual_metric_ds2(const WData& w, C z);

struct DualResult {
    WData data; // same (psi1, psi2, dh) — shared W-data of the dual pair
    SurfaceMesh mesh;
    double max_null_resid = 0;  // max |sum (phi_i*)^2| / scale over vertices
    double min_domination = 0;  // min of (ds*)^2 - ds^2 - 2|phi4|^2 (== 0 identically)
};
DualResult dual_immersion(const WData& w, GridSpec grid = {});

struct TotalCurvature {
    enum class Verdict { FINITE, DIVERGES, INCONCLUSIVE };
    Verdict verdict = Verdict::INCONCLUSIVE;
    double value = 0;          // signed \int K dA at the last stage
    double unsigned_value = 0; // \int |K| dA at the last stage
    std::vector<double> stages, unsigned_stages;
};

/// Adaptive quadrature of K dA over an exhausting schedule k = 1..kmax:
/// log-polar annuli around the puncture for punctured domains, growing squares
/// otherwise.  FINITE when the signed stages become Cauchy, DIVERGES when the
/// unsigned stages keep growing linearly across the schedule.
TotalCurvature total_curvature(const WData& w, int kmax = 6);

/// Pullback consistency at z along the direction dir: pushes the Gauss map
/// G(z) = (psi1(z), psi2(z)) forward by finite differences and evaluates the
/// ambient quadric metric on the image step (Richardson-extrapolated), against
/// -K ds^2 applied to the same step.  Returns (lhs, rhs).
std::pair<double, double> pullback_check(const WData& w, C z, C dir, double eps = 1e-4);

const char* to_string(TotalCurvature::Verdict v);

} // namespace lgq
