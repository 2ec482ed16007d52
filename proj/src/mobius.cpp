#include "lgq/mobius.hpp"

#include <cmath>

namespace lgq {

MobiusMat::MobiusMat(C a_, C b_, C c_, C d_, double tol) : a(a_), b(b_), c(c_), d(d_) {
    C det = a * d - b * c;
    double scale = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    if (std::abs(det) <= tol * scale)
        throw Error(ErrorCode::DEGENERATE_INPUT, "matrix is singular, not a Moebius map");
    C s = std::sqrt(det);
    a /= s;
    b /= s;
    c /= s;
    d /= s;
}

ExtC mobius_apply(const MobiusMat& S, const ExtC& w) {
    if (w.inf) {
        if (std::abs(S.c) == 0.0) return ExtC::infinity();
        return ExtC(S.a / S.c);
    }
    C num = S.a * w.v + S.b;
    C den = S.c * w.v + S.d;
    if (std::abs(den) == 0.0) return ExtC::infinity();
    // guard against overflow near the pole
    if (std::abs(den) < 1e-300) return ExtC::infinity();
    return ExtC(num / den);
}

C mobius_deriv(const MobiusMat& S, C w) {
    C den = S.c * w + S.d;
    return 1.0 / (den * den); // det = 1
}

} // namespace lgq
