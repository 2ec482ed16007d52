#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace lgq {

using C = std::complex<double>;

/// A point of the Riemann sphere C ∪ {∞}.
struct ExtC {
    C v{0.0, 0.0};
    bool inf = false;

    ExtC() = default;
    ExtC(C z) : v(z) {}
    ExtC(double x) : v(x, 0.0) {}
    static ExtC infinity() { return ExtC{C{0, 0}, true}; }

  private:
    ExtC(C z, bool isinf) : v(z), inf(isinf) {}
};

inline bool finite(const ExtC& w) { return !w.inf; }

inline ExtC conj(const ExtC& w) { return w.inf ? ExtC::infinity() : ExtC(std::conj(w.v)); }

inline ExtC reciprocal(const ExtC& w) {
    if (w.inf) return ExtC(C{0, 0});
    if (w.v == C{0, 0}) return ExtC::infinity();
    return ExtC(1.0 / w.v);
}

/// Chordal distance on the sphere (bounded metric, good for tolerant equality
/// including points at infinity).
inline double chordal(const ExtC& a, const ExtC& b) {
    auto lift = [](const ExtC& w, double& n) {
        // returns (w, 1) or (1, 0) homogeneous, n = norm
        if (w.inf) {
            n = 1.0;
            return std::pair<C, C>{C{1, 0}, C{0, 0}};
        }
        n = std::sqrt(std::norm(w.v) + 1.0);
        return std::pair<C, C>{w.v, C{1, 0}};
    };
    double na, nb;
    auto [a1, a2] = lift(a, na);
    auto [b1, b2] = lift(b, nb);
    return std::abs(a1 * b2 - b1 * a2) / (na * nb);
}

inline bool approx(const ExtC& a, const ExtC& b, double tol) { return chordal(a, b) <= tol; }

} // namespace lgq
