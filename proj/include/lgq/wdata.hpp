#pragma once
/// Weierstrass-type representation data for space-like stationary surfaces in
/// R^{3,1}: the pair of chart functions (psi1, psi2) and the height
/// differential dh = f dz, together with the parameter domain.
///
/// phi = (psi1 + psi2, -i(psi1 - psi2), 1 - psi1*psi2, 1 + psi1*psi2) dh,
/// ds^2 = 2|psi1 - conj(psi2)|^2 |dh|^2, and
/// K = -2 Re[conj(psi1') psi2' (psi1 - conj(psi2))^2] / |psi1 - conj(psi2)|^6
/// with psi_i' = (d psi_i / dz) / f (derivative with respect to h).

#include <array>
#include <string>
#include <vector>

#include "lgq/expr.hpp"
#include "lgq/minkowski.hpp"

namespace lgq {

struct Loop {
    C center{0, 0};
    double radius = 1.0;
};

struct Domain {
    enum class Base { RECTANGLE, ANNULUS };
    Base base = Base::RECTANGLE;
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1; // RECTANGLE bounds
    double r0 = 0.5, r1 = 2.0;               // ANNULUS radii (centered at 0)
    std::vector<C> punctures;
    std::vector<Loop> loops;

    static Domain rectangle(double x0, double x1, double y0, double y1);
    static Domain annulus(double r0, double r1);
    bool contains(C z) const;
    double span() const;
    /// Interior sample points avoiding punctures.
    std::vector<C> samples(int nx, int ny) const;
};

struct WData {
    Expr psi1, psi2, f; // dh = f dz
    Domain domain;
    std::string name;
};

/// The four dz-coefficients of phi.  Throws POLE_HIT on non-finite values.
CVec4 phi_from_wdata(const WData& w, C z);

/// Conformal factor of the induced metric: ds^2 = metric_ds2 * |dz|^2.
double metric_ds2(const WData& w, C z);

/// Gauss curvature.  Throws DEGENERATE_METRIC where the metric degenerates
/// (|psi2 - conj(psi1)| below the guard threshold) or where dh vanishes.
double gauss_K(const WData& w, C z);

/// True when (psi1, psi2) values sit inside the degenerate-locus guard band:
/// |psi2v - conj(psi1v)| < 1e-10 (1+|psi1v|)(1+|psi2v|).
bool degenerate_gap(C psi1v, C psi2v);

struct PunctureCheck {
    C p;
    int ord_f = 0;            // order of f at p (negative = pole)
    int ord_psi1 = 0, ord_psi2 = 0;
    std::array<int, 4> ord_phi{0, 0, 0, 0};
    bool declared = true;     // false: discovered as an interior zero of f
    bool ok = false;          // phi regular and zero(dh) <-> pole(psi) matched
};

struct LoopCheck {
    Loop loop;
    C per_psi1dh{}, per_psi2dh{}, per_dh{}, per_psi12dh{};
    double resid_conj = 0;     // |loop psi1 dh + conj(loop psi2 dh)|
    double resid_re_dh = 0;    // |Re loop dh|
    double resid_re_psi12 = 0; // |Re loop psi1 psi2 dh|
    bool ok = false;
};

struct WReport {
    double min_gap = 0; // min |psi2 - conj(psi1)| over the sample grid
    C min_gap_at{};
    bool gap_flag = false; // min_gap < 1e-9
    std::vector<PunctureCheck> punctures;
    std::vector<LoopCheck> loops;
    bool all_ok = false;
};

/// Numeric W-data checks: degenerate-gap sampling, zero/pole order matching at
/// punctures and at interior zeros of f (argument-principle order counting),
/// and the loop-period identities
///   loop psi1 dh = -conj(loop psi2 dh),  Re loop dh = 0,  Re loop psi1 psi2 dh = 0
/// via trapezoid quadrature on each declared circle, refined by doubling.
WReport wdata_validate(const WData& w, int grid = 40);

/// Closed contour integral of expr * f dz over the circle, trapezoid rule with
/// doubling until the change is below 1e-9 (relative).
C loop_integral(const Expr& expr, const Expr& f, const Loop& loop);

/// One-parameter families of degenerate data.  Preconditions sample-checked on
/// the domain; violations throw FAMILY_PRECONDITION_FAILED.
///   hyperbolic: psi1 = psi, psi2 = e^{2u} psi, dh = f dz  (psi, f nowhere 0)
///   elliptic:   psi1 = psi, psi2 = e^{-2i a}/psi, dh = e^{i a} g dz
///               (omega = g dz; g psi^{+-1} bounded — zeros of omega must
///                match zeros/poles of psi)
///   parabolic:  psi1 = psi, psi2 = psi + 1, dh = f dz     (f nowhere 0)
WData family_hyperbolic(Expr psi, Expr f, double u, Domain domain);
WData family_elliptic(Expr psi, Expr g, double alpha, Domain domain);
WData family_parabolic(Expr psi, Expr f, Domain domain);

} // namespace lgq
