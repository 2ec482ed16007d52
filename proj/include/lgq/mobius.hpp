#pragma once

#include "lgq/error.hpp"
#include "lgq/extc.hpp"

namespace lgq {

/// Unimodular Möbius transformation w -> (a w + b)/(c w + d), ad - bc = 1.
/// S and -S act identically; all consumers treat them as the same element.
struct MobiusMat {
    C a{1}, b{0}, c{0}, d{1};

    MobiusMat() = default;
    /// Normalizes det to 1 (divides by a square root of ad - bc).
    /// Errors: DEGENERATE_INPUT when |ad - bc| is ~0 relative to the entries.
    MobiusMat(C a_, C b_, C c_, C d_, double tol = 1e-12);

    C det() const { return a * d - b * c; }
    C trace() const { return a + d; }
    MobiusMat inverse() const { return MobiusMat(d, -b, -c, a); }
    MobiusMat compose(const MobiusMat& o) const { // this ∘ o
        return MobiusMat(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
                         c * o.b + d * o.d);
    }
    MobiusMat conj_entries() const {
        return MobiusMat(std::conj(a), std::conj(b), std::conj(c), std::conj(d));
    }
};

/// Extended evaluation on C ∪ {∞} (∞ -> a/c, pole -> ∞).
ExtC mobius_apply(const MobiusMat& S, const ExtC& w);

/// Derivative 1/(cw+d)² at a finite non-pole point.
C mobius_deriv(const MobiusMat& S, C w);

} // namespace lgq
