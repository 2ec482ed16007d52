#include "lgq/hyperplanes.hpp"

#include <cmath>
#include <functional>

namespace lgq {

const char* to_string(HypTag t) {
    switch (t) {
        case HypTag::IN_Q_PLUS: return "IN_Q_PLUS";
        case HypTag::IN_Q_NULLBOUNDARY: return "IN_Q_NULLBOUNDARY";
        case HypTag::TOTALLY_REAL_SPACE: return "TOTALLY_REAL_SPACE";
        case HypTag::TOTALLY_REAL_TIME: return "TOTALLY_REAL_TIME";
        case HypTag::TOTALLY_REAL_NULL: return "TOTALLY_REAL_NULL";
        case HypTag::HYPERBOLIC: return "HYPERBOLIC";
        case HypTag::ELLIPTIC: return "ELLIPTIC";
        case HypTag::PARABOLIC: return "PARABOLIC";
    }
    return "?";
}

const char* to_string(MetricCase m) {
    switch (m) {
        case MetricCase::CASE_I: return "I";
        case MetricCase::CASE_II: return "II";
        case MetricCase::CASE_III: return "III";
        case MetricCase::CASE_IV: return "IV";
        case MetricCase::CASE_V: return "V";
    }
    return "?";
}

const char* to_string(AreaResult::Verdict v) {
    switch (v) {
        case AreaResult::Verdict::FINITE: return "FINITE";
        case AreaResult::Verdict::DIVERGES: return "DIVERGES";
        case AreaResult::Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

InvariantI invariant_I(const CVec4& A, double tol) {
    double scale = cnorm2(A);
    if (scale == 0) throw Error(ErrorCode::DEGENERATE_INPUT, "zero vector");
    double num = std::abs(cmink_bilinear(A, A));
    double den = cmink_hermitian(A, A).real();
    if (num <= tol * scale && std::abs(den) <= tol * scale)
        throw Error(ErrorCode::INDETERMINATE, "both <A,A> and (A, conj A) vanish");
    if (std::abs(den) <= tol * scale) return {0.0, true};
    return {num / den, false};
}

HyperplaneClass classify_A(const CVec4& A, double tol) {
    double scale2 = cnorm2(A);
    if (scale2 == 0) throw Error(ErrorCode::DEGENERATE_INPUT, "zero vector");
    HyperplaneClass out;
    C q = cmink_bilinear(A, A);
    double h = cmink_hermitian(A, A).real();

    if (std::abs(q) <= tol * scale2) {
        if (h > tol * scale2) {
            out.tag = HypTag::IN_Q_PLUS;
            out.canonical = ProjPoint(CVec4{C{1}, C{0, 1}, C{0}, C{0}});
            out.invariant = {0.0, false};
        } else {
            out.tag = HypTag::IN_Q_NULLBOUNDARY;
            out.canonical = ProjPoint(CVec4{C{0}, C{0}, C{1}, C{1}});
            out.invariant_defined = false;
        }
        return out;
    }

    // phase rotation killing <X,Y>
    Vec4 X = real(A), Y = imag(A);
    double xx = mink_inner(X, X), yy = mink_inner(Y, Y), xy = mink_inner(X, Y);
    double theta = 0.5 * std::atan2(-2.0 * xy, xx - yy);
    C phase = std::exp(C{0, theta});
    CVec4 Ap = A * phase;
    Vec4 Xp = real(Ap), Yp = imag(Ap);

    Bivec W = wedge(Xp, Yp);
    double minor_max = 0;
    for (int i = 0; i < 6; ++i) minor_max = std::max(minor_max, std::abs(W[i]));
    double rowprod = euclid_norm(Xp) * euclid_norm(Yp);

    if (minor_max <= 1e-9 * std::max(rowprod, 1e-300)) {
        // totally real (some real vector spans A up to phase)
        const Vec4& M = euclid_norm2(Xp) >= euclid_norm2(Yp) ? Xp : Yp;
        switch (classify_vector(M, tol)) {
            case CausalType::SPACELIKE:
                out.tag = HypTag::TOTALLY_REAL_SPACE;
                out.canonical = ProjPoint(CVec4{C{1}, C{0}, C{0}, C{0}});
                out.invariant = {1.0, false};
                return out;
            case CausalType::TIMELIKE:
                out.tag = HypTag::TOTALLY_REAL_TIME;
                out.canonical = ProjPoint(CVec4{C{0}, C{0}, C{0}, C{1}});
                out.invariant = {-1.0, false};
                return out;
            default:
                // a null totally-real pole has <A,A> = 0 and was caught above;
                // only reachable through threshold corner cases
                out.tag = HypTag::TOTALLY_REAL_NULL;
                out.canonical = ProjPoint(CVec4{C{0}, C{0}, C{1}, C{1}});
                out.invariant_defined = false;
                return out;
        }
    }

    double w2 = bivec_inner(W, W);
    double wn = bivec_norm2_euclid(W);
    out.invariant = invariant_I(A, tol);

    if (std::abs(w2) <= tol * wn) {
        out.tag = HypTag::PARABOLIC;
        out.canonical = ProjPoint(CVec4{C{1}, C{0}, C{0, 1}, C{0, 1}});
        return out;
    }
    if (w2 > 0) {
        out.tag = HypTag::HYPERBOLIC;
        // I = sech 2u in (0,1)
        double inv = std::max(1.0, 1.0 / out.invariant.value);
        out.param = 0.5 * std::acosh(inv);
        double th = std::tanh(out.param);
        out.canonical = ProjPoint(CVec4{C{th}, C{0, 1}, C{0}, C{0}});
        return out;
    }
    out.tag = HypTag::ELLIPTIC;
    // I = sec 2alpha (signed), infinite at alpha = pi/4
    double c2a = out.invariant.infinite ? 0.0 : std::clamp(1.0 / out.invariant.value, -1.0, 1.0);
    out.param = 0.5 * std::acos(c2a);
    out.canonical = ProjPoint(CVec4{C{0}, C{0}, C{1}, C{0, std::tan(out.param)}});
    return out;
}

MobiusMat mobius_from_A(const CVec4& A, double tol) {
    double scale2 = cnorm2(A);
    C q = cmink_bilinear(A, A);
    if (std::abs(q) <= tol * scale2)
        throw Error(ErrorCode::A_ON_QUADRIC, "graph matrix needs <A,A> != 0");
    const C i{0, 1};
    // det of the unnormalized matrix is -<A,A>
    return MobiusMat(A[0] - i * A[1], A[2] - A[3], A[2] + A[3], -(A[0] + i * A[1]));
}

CVec4 A_from_mobius(const MobiusMat& S) {
    const C i{0, 1};
    return {S.a - S.d, i * (S.a + S.d), S.b + S.c, S.c - S.b};
}

SymmetryAlgebra symmetry_algebra(const MobiusMat& S, double tol) {
    // unknowns: X = [[x, y], [z, -x]], 6 real dof; equations conj(X) S - S X = 0
    auto equation = [&](const MobiusMatFree& X) {
        MobiusMatFree R;
        C xb = std::conj(X.a), yb = std::conj(X.b), zb = std::conj(X.c);
        R.a = xb * S.a + yb * S.c - (S.a * X.a + S.b * X.c);
        R.b = xb * S.b + yb * S.d - (S.a * X.b + S.b * X.d);
        R.c = zb * S.a - xb * S.c - (S.c * X.a + S.d * X.c);
        R.d = zb * S.b - xb * S.d - (S.c * X.b + S.d * X.d);
        return R;
    };
    std::vector<std::vector<double>> M(8, std::vector<double>(6, 0.0));
    for (int k = 0; k < 6; ++k) {
        double re[6] = {0, 0, 0, 0, 0, 0};
        re[k] = 1.0;
        MobiusMatFree X;
        X.a = C{re[0], re[1]};
        X.b = C{re[2], re[3]};
        X.c = C{re[4], re[5]};
        X.d = -X.a;
        MobiusMatFree E = equation(X);
        const C vals[4] = {E.a, E.b, E.c, E.d};
        for (int r = 0; r < 4; ++r) {
            M[2 * r][k] = vals[r].real();
            M[2 * r + 1][k] = vals[r].imag();
        }
    }
    auto basis = nullspace(M, tol);
    SymmetryAlgebra out;
    out.dim = (int)basis.size();
    for (auto& v : basis) {
        MobiusMatFree X;
        X.a = C{v[0], v[1]};
        X.b = C{v[2], v[3]};
        X.c = C{v[4], v[5]};
        X.d = -X.a;
        out.basis.push_back(X);
    }
    return out;
}

double hyperplane_metric(MetricCase mc, double param, C point) {
    switch (mc) {
        case MetricCase::CASE_I: {
            double y = point.imag();
            if (y == 0.0) throw Error(ErrorCode::OUT_OF_DOMAIN, "Case I lives on C \\ R");
            return -1.0 / (y * y);
        }
        case MetricCase::CASE_II: {
            double d = 1.0 + std::norm(point);
            return 4.0 / (d * d);
        }
        case MetricCase::CASE_III: {
            if (point == C{0, 0}) throw Error(ErrorCode::OUT_OF_DOMAIN, "Case III lives on C*");
            double th = std::arg(point);
            C D = std::exp(C{-param, -th}) - std::exp(C{param, th});
            return (4.0 / (D * D)).real();
        }
        case MetricCase::CASE_IV: {
            if (point == C{0, 0}) throw Error(ErrorCode::OUT_OF_DOMAIN, "Case IV lives on C*");
            double t = std::log(std::abs(point));
            C D = std::exp(C{-t, -param}) - std::exp(C{t, param});
            return -(4.0 / (D * D)).real();
        }
        case MetricCase::CASE_V: {
            C D = C{1, 0} + C{0, 2} * point.imag();
            return (4.0 / (D * D)).real();
        }
    }
    throw Error(ErrorCode::OUT_OF_DOMAIN, "unknown case");
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-9) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 28);
}

} // namespace

AreaResult hyperplane_total_area(MetricCase mc, double param, int kmax) {
    AreaResult out;
    std::vector<double> stages, signed_stages;

    for (int k = 1; k <= kmax; ++k) {
        double area = 0, signed_area = 0;
        switch (mc) {
            case MetricCase::CASE_I: {
                // [-e^k, e^k] x { e^{-k} <= |Im w| <= e^k }; lambda = -1/y²
                double X = std::exp((double)k);
                double y0 = std::exp(-(double)k), y1 = X;
                auto f = [](double y) { return 1.0 / (y * y); };
                double I = integrate(f, y0, y1);
                area = 2.0 * X * 2.0 * I;
                signed_area = -area;
                break;
            }
            case MetricCase::CASE_II: {
                double R = std::exp((double)k);
                auto f = [](double r) {
                    double d = 1.0 + r * r;
                    return 4.0 / (d * d) * r;
                };
                area = 2.0 * M_PI * integrate(f, 0.0, R);
                signed_area = area;
                break;
            }
            case MetricCase::CASE_III: {
                // lambda depends on theta only; t-range [-k, k]
                auto f = [&](double th) {
                    C D = std::exp(C{-param, -th}) - std::exp(C{param, th});
                    return (4.0 / (D * D)).real();
                };
                double Iu = integrate([&](double th) { return std::abs(f(th)); }, 0.0, 2 * M_PI);
                double Is = integrate(f, 0.0, 2 * M_PI);
                area = 2.0 * k * Iu;
                signed_area = 2.0 * k * Is;
                break;
            }
            case MetricCase::CASE_IV: {
                double T = 2.5 * k;
                auto f = [&](double t) {
                    C D = std::exp(C{-t, -param}) - std::exp(C{t, param});
                    return -(4.0 / (D * D)).real();
                };
                area = 2.0 * M_PI * integrate([&](double t) { return std::abs(f(t)); }, -T, T);
                signed_area = 2.0 * M_PI * integrate(f, -T, T);
                break;
            }
            case MetricCase::CASE_V: {
                double L = 2.0 * k;
                auto f = [](double y) {
                    C D = C{1, 2 * y};
                    return (4.0 / (D * D)).real();
                };
                double Iu = integrate([&](double y) { return std::abs(f(y)); }, -L, L);
                double Is = integrate(f, -L, L);
                area = 2.0 * L * Iu;
                signed_area = 2.0 * L * Is;
                break;
            }
        }
        stages.push_back(area);
        signed_stages.push_back(signed_area);
    }

    out.stages = stages;
    out.value = stages.back();
    out.signed_value = signed_stages.back();

    int n = (int)stages.size();
    if (n >= 2 && stages[0] > 0 && stages[n - 1] >= 0.999 * kmax * stages[0]) {
        out.verdict = AreaResult::Verdict::DIVERGES;
    } else if (n >= 3 && std::abs(stages[n - 1] - stages[n - 2]) < 1e-4 &&
               std::abs(stages[n - 2] - stages[n - 3]) < 1e-4) {
        out.verdict = AreaResult::Verdict::FINITE;
    } else {
        out.verdict = AreaResult::Verdict::INCONCLUSIVE;
    }
    return out;
}

} // namespace lgq
