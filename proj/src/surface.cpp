#include "lgq/surface.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>

namespace lgq {

namespace {

bool finite(C v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// 8-node Gauss-Legendre on [-1, 1]
constexpr double GL_X[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double GL_W[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

struct CAcc {
    C a[4]{};
    CAcc operator+(const CAcc& o) const {
        CAcc r;
        for (int k = 0; k < 4; ++k) r.a[k] = a[k] + o.a[k];
        return r;
    }
};

// \int_{za}^{zb} phi(z) dz along the straight segment; false on bad values.
bool edge_integral(const WData& w, C za, C zb, CAcc& out) {
    C mid = 0.5 * (za + zb), half = 0.5 * (zb - za);
    CAcc acc;
    for (int q = 0; q < 8; ++q) {
        C z = mid + GL_X[q] * half;
        C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z), fv = expr_eval(w.f, z);
        if (!finite(p1) || !finite(p2) || !finite(fv)) return false;
        const C i{0, 1};
        C p12 = p1 * p2;
        C phi[4] = {(p1 + p2) * fv, -i * (p1 - p2) * fv, (C{1} - p12) * fv, (C{1} + p12) * fv};
        for (int k = 0; k < 4; ++k) {
            if (std::abs(phi[k]) > 1e12) return false;
            acc.a[k] += GL_W[q] * phi[k];
        }
    }
    for (int k = 0; k < 4; ++k) out.a[k] = acc.a[k] * half;
    return true;
}

Vec4 position_from(const CAcc& acc, const Vec4& base, bool dual) {
    double x4 = dual ? -acc.a[3].imag() : acc.a[3].real();
    return {base[0] + acc.a[0].real(), base[1] + acc.a[1].real(), base[2] + acc.a[2].real(),
            base[3] + x4};
}

// Adaptive Simpson for the quadrature in total_curvature.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol)
        return left + right + (left + right - whole) / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate1d(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 20);
}

// Signed K dA density at z (0 where the data degenerates or blows up).
double k_density(const WData& w, C z) {
    try {
        double K = gauss_K(w, z);
        double l2 = metric_ds2(w, z);
        double v = K * l2;
        return std::isfinite(v) ? v : 0.0;
    } catch (const Error&) {
        return 0.0;
    }
}

// \int over the annulus eps <= |z - p| <= R of K dA (and |K| dA), log-polar.
std::pair<double, double> annulus_curvature(const WData& w, C p, double eps, double R) {
    auto ring = [&](double s, bool absval) {
        double r = std::exp(s);
        auto g = [&](double th) {
            C z = p + std::polar(r, th);
            double v = k_density(w, z) * r * r;
            return absval ? std::abs(v) : v;
        };
        // periodic trapezoid with doubling
        int n = 64;
        auto trap = [&](int nn) {
            double acc = 0;
            for (int k = 0; k < nn; ++k) acc += g(2 * M_PI * k / nn);
            return acc * 2 * M_PI / nn;
        };
        double prev = trap(n);
        for (n = 128; n <= 1024; n *= 2) {
            double cur = trap(n);
            if (std::abs(cur - prev) <= 1e-9 * (1 + std::abs(cur))) return cur;
            prev = cur;
        }
        return prev;
    };
    double s0 = std::log(eps), s1 = std::log(R);
    double signedv = integrate1d([&](double s) { return ring(s, false); }, s0, s1, 1e-8);
    double unsignedv = integrate1d([&](double s) { return ring(s, true); }, s0, s1, 1e-8);
    return {signedv, unsignedv};
}

// Masked midpoint quadrature over [-L,L]^2 minus eps-discs at the punctures.
std::pair<double, double> square_curvature(const WData& w, double L, double eps, int n) {
    double h = 2 * L / n;
    double sv = 0, uv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            C z{-L + (j + 0.5) * h, -L + (i + 0.5) * h};
            bool masked = false;
            for (const C& p : w.domain.punctures)
                if (std::abs(z - p) < eps) masked = true;
            if (masked) continue;
            double v = k_density(w, z) * h * h;
            sv += v;
            uv += std::abs(v);
        }
    return {sv, uv};
}

} // namespace

double SurfaceMesh::diameter() const {
    double lo[4], hi[4];
    bool any = false;
    for (size_t v = 0; v < pos.size(); ++v) {
        if (!valid[v]) continue;
        for (int k = 0; k < 4; ++k) {
            double x = pos[v][k];
            if (!any) {
                lo[k] = hi[k] = x;
            } else {
                lo[k] = std::min(lo[k], x);
                hi[k] = std::max(hi[k], x);
            }
        }
        any = true;
    }
    if (!any) return 0;
    double d2 = 0;
    for (int k = 0; k < 4; ++k) d2 += (hi[k] - lo[k]) * (hi[k] - lo[k]);
    return std::sqrt(d2);
}

SurfaceMesh integrate_surface(const WData& w, GridSpec grid, Vec4 base, bool allow_cut,
                              bool dual) {
    const Domain& dom = w.domain;
    int nu = std::max(2, grid.nu), nv = std::max(2, grid.nv);

    SurfaceMesh mesh;
    mesh.nu = nu;
    mesh.nv = nv;
    mesh.dual = dual;
    mesh.params.resize((size_t)nu * nv);
    mesh.pos.assign((size_t)nu * nv, Vec4{});
    mesh.lambda2.assign((size_t)nu * nv, std::numeric_limits<double>::quiet_NaN());
    mesh.K.assign((size_t)nu * nv, std::numeric_limits<double>::quiet_NaN());
    mesh.valid.assign((size_t)nu * nv, 0);

    // --- parameter grid (annulus duplicates the angular seam) ---
    std::vector<double> clearance((size_t)nu * nv, 0.0);
    if (dom.base == Domain::Base::RECTANGLE) {
        double hx = (dom.x1 - dom.x0) / (nv - 1), hy = (dom.y1 - dom.y0) / (nu - 1);
        double cell = std::min(hx, hy);
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nv; ++j) {
                mesh.params[(size_t)i * nv + j] = C{dom.x0 + j * hx, dom.y0 + i * hy};
                clearance[(size_t)i * nv + j] = 0.45 * cell;
            }
    } else {
        double s0 = std::log(dom.r0), s1 = std::log(dom.r1);
        double hs = (s1 - s0) / (nu - 1), hth = 2 * M_PI / (nv - 1);
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nv; ++j) {
                double r = std::exp(s0 + i * hs);
                mesh.params[(size_t)i * nv + j] = std::polar(r, j * hth);
                clearance[(size_t)i * nv + j] = 0.45 * r * std::min(hs, hth);
            }
    }

    // --- vertex validity ---
    for (size_t v = 0; v < mesh.params.size(); ++v) {
        C z = mesh.params[v];
        bool near_puncture = false;
        for (const C& p : dom.punctures)
            if (std::abs(z - p) < clearance[v]) near_puncture = true;
        if (near_puncture) continue;
        C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z), fv = expr_eval(w.f, z);
        if (!finite(p1) || !finite(p2) || !finite(fv)) continue;
        const C i{0, 1};
        C p12 = p1 * p2;
        C phi[4] = {(p1 + p2) * fv, -i * (p1 - p2) * fv, (C{1} - p12) * fv, (C{1} + p12) * fv};
        bool ok = true;
        for (int k = 0; k < 4; ++k) ok = ok && finite(phi[k]) && std::abs(phi[k]) <= 1e12;
        if (!ok) continue;
        mesh.valid[v] = 1;
        mesh.lambda2[v] = 2.0 * std::norm(p1 - std::conj(p2)) * std::norm(fv);
        try {
            mesh.K[v] = gauss_K(w, z);
        } catch (const Error&) {
        }
    }

    // --- real-period gate ---
    std::vector<Loop> loops = dom.loops;
    if (loops.empty()) {
        for (const C& p : dom.punctures) {
            double rad = 0.25 * dom.span();
            for (const C& q : dom.punctures)
                if (q != p) rad = std::min(rad, 0.4 * std::abs(q - p));
            if (dom.base == Domain::Base::ANNULUS && std::abs(p) < dom.r0)
                rad = std::sqrt(dom.r0 * dom.r1); // ring around the inner hole
            loops.push_back(Loop{p, rad});
        }
    }
    double worst_period = 0;
    const Expr one = expr_const(C{1});
    for (const Loop& loop : loops) {
        C I1 = loop_integral(w.psi1, w.f, loop);
        C I2 = loop_integral(w.psi2, w.f, loop);
        C I0 = loop_integral(one, w.f, loop);
        C I12 = loop_integral(emul(w.psi1, w.psi2), w.f, loop);
        const C i{0, 1};
        C per[4] = {I1 + I2, -i * (I1 - I2), I0 - I12, I0 + I12};
        double scale = 1 + std::abs(per[0]) + std::abs(per[1]) + std::abs(per[2]) +
                       std::abs(per[3]);
        for (int k = 0; k < 4; ++k) {
            double re = (dual && k == 3) ? -per[k].imag() : per[k].real();
            worst_period = std::max(worst_period, std::abs(re) / scale);
        }
    }
    if (worst_period > 1e-6) {
        if (!allow_cut)
            throw Error(ErrorCode::PERIOD_OBSTRUCTION,
                        "real periods do not vanish (max relative " +
                            std::to_string(worst_period) + "); pass allow_cut to integrate on "
                            "the cut domain");
        mesh.multivalued = true;
    }

    // --- breadth-first integration from a base vertex ---
    auto neighbors = [&](int v, bool reversed, int out[4]) {
        int i = v / nv, j = v % nv, n = 0;
        int cand[4][2] = {{i, j + 1}, {i + 1, j}, {i, j - 1}, {i - 1, j}};
        for (int c = 0; c < 4; ++c) {
            int ci = cand[reversed ? 3 - c : c][0], cj = cand[reversed ? 3 - c : c][1];
            if (ci < 0 || ci >= nu || cj < 0 || cj >= nv) continue;
            out[n++] = ci * nv + cj;
        }
        return n;
    };

    int start = -1;
    {
        // the valid vertex closest to the grid midpoint
        double best = std::numeric_limits<double>::infinity();
        int mi = nu / 2, mj = nv / 2;
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nv; ++j) {
                int v = i * nv + j;
                if (!mesh.valid[v]) continue;
                double d = std::hypot(i - mi, j - mj);
                if (d < best) {
                    best = d;
                    start = v;
                }
            }
    }
    if (start < 0) throw Error(ErrorCode::DEGENERATE_METRIC, "no usable grid vertex");

    auto traverse = [&](bool reversed, std::vector<CAcc>& acc, std::vector<char>& reached) {
        acc.assign((size_t)nu * nv, CAcc{});
        reached.assign((size_t)nu * nv, 0);
        std::deque<int> queue{start};
        reached[start] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            int nb[4];
            int n = neighbors(v, reversed, nb);
            for (int c = 0; c < n; ++c) {
                int u = nb[c];
                if (!mesh.valid[u] || reached[u]) continue;
                CAcc step;
                if (!edge_integral(w, mesh.params[v], mesh.params[u], step)) continue;
                acc[u] = acc[v] + step;
                reached[u] = 1;
                queue.push_back(u);
            }
        }
    };

    std::vector<CAcc> acc;
    std::vector<char> reached;
    traverse(false, acc, reached);
    for (size_t v = 0; v < mesh.params.size(); ++v) {
        if (!reached[v]) {
            mesh.valid[v] = 0;
            continue;
        }
        mesh.pos[v] = position_from(acc[v], base, dual);
    }

    // --- path-independence spot check (skipped on a cut domain) ---
    if (!mesh.multivalued) {
        std::vector<CAcc> acc2;
        std::vector<char> reached2;
        traverse(true, acc2, reached2);
        double tol = std::max(1e-7, 1e-7 * mesh.diameter());
        int checked = 0;
        for (size_t v = 0; v < mesh.params.size() && checked < 10; v += 97) {
            if (!mesh.valid[v] || !reached2[v]) continue;
            Vec4 q = position_from(acc2[v], base, dual);
            double d = euclid_norm(q - mesh.pos[v]);
            if (d > tol)
                throw Error(ErrorCode::PERIOD_OBSTRUCTION,
                            "integration is path-dependent on the grid (mismatch " +
                                std::to_string(d) + "); pass allow_cut to force a cut");
            ++checked;
        }
    }

    // --- faces over fully valid cells ---
    for (int i = 0; i + 1 < nu; ++i)
        for (int j = 0; j + 1 < nv; ++j) {
            int v00 = i * nv + j, v01 = i * nv + j + 1;
            int v10 = (i + 1) * nv + j, v11 = (i + 1) * nv + j + 1;
            if (mesh.valid[v00] && mesh.valid[v01] && mesh.valid[v11] && mesh.valid[v10]) {
                mesh.faces.push_back({v00, v01, v11});
                mesh.faces.push_back({v00, v11, v10});
            }
        }
    return mesh;
}

CVec4 phi_dual(const WData& w, C z) {
    CVec4 phi = phi_from_wdata(w, z);
    return {phi[0], phi[1], phi[2], C{0, 1} * phi[3]};
}

double dual_metric_ds2(const WData& w, C z) {
    C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z), fv = expr_eval(w.f, z);
    double g = 2.0 * (1 + std::norm(p1)) * (1 + std::norm(p2)) * std::norm(fv);
    if (!std::isfinite(g)) throw Error(ErrorCode::POLE_HIT, "dual metric not finite");
    return g;
}

DualResult dual_immersion(const WData& w, GridSpec grid) {
    DualResult out;
    out.data = w;
    out.mesh = integrate_surface(w, grid, Vec4{}, false, true);
    out.max_null_resid = 0;
    out.min_domination = std::numeric_limits<double>::infinity();
    for (size_t v = 0; v < out.mesh.params.size(); ++v) {
        if (!out.mesh.valid[v]) continue;
        C z = out.mesh.params[v];
        CVec4 ph = phi_dual(w, z);
        C sum = ph[0] * ph[0] + ph[1] * ph[1] + ph[2] * ph[2] + ph[3] * ph[3];
        double scale = std::norm(ph[0]) + std::norm(ph[1]) + std::norm(ph[2]) + std::norm(ph[3]);
        if (scale > 0) out.max_null_resid = std::max(out.max_null_resid, std::abs(sum) / scale);
        double dom = dual_metric_ds2(w, z) - metric_ds2(w, z) - 2 * std::norm(ph[3]);
        out.min_domination = std::min(out.min_domination, dom);
    }
    if (!std::isfinite(out.min_domination)) out.min_domination = 0;
    return out;
}

TotalCurvature total_curvature(const WData& w, int kmax) {
    TotalCurvature tc;
    kmax = std::max(3, kmax);
    const auto& punct = w.domain.punctures;
    for (int k = 1; k <= kmax; ++k) {
        std::pair<double, double> stage{0, 0};
        if (punct.size() == 1) {
            double R = std::exp((double)k) * (1 + std::abs(punct[0]));
            double eps = std::exp(-(double)k);
            stage = annulus_curvature(w, punct[0], eps, R);
        } else if (punct.empty()) {
            stage = square_curvature(w, std::pow(2.0, k) / 2.0, 0.0, 256);
        } else {
            double sep = std::numeric_limits<double>::infinity();
            for (size_t a = 0; a < punct.size(); ++a)
                for (size_t b = a + 1; b < punct.size(); ++b)
                    sep = std::min(sep, std::abs(punct[a] - punct[b]));
            double eps = std::exp(-(double)k) * sep / 4;
            stage = square_curvature(w, std::pow(2.0, k), eps, 512);
        }
        tc.stages.push_back(stage.first);
        tc.unsigned_stages.push_back(stage.second);
    }
    tc.value = tc.stages.back();
    tc.unsigned_value = tc.unsigned_stages.back();

    const auto& u = tc.unsigned_stages;
    size_t n = u.size();
    double cauchy = std::max(1e-4, 1e-6 * std::abs(u[n - 1]));
    bool finite_v = std::abs(u[n - 1] - u[n - 2]) < cauchy && std::abs(u[n - 2] - u[n - 3]) < cauchy;
    double d0 = u[1] - u[0];
    bool growing = d0 > 1e-3;
    for (size_t k = 2; k < n && growing; ++k) growing = (u[k] - u[k - 1]) > 0.25 * d0;
    if (finite_v)
        tc.verdict = TotalCurvature::Verdict::FINITE;
    else if (growing && u[n - 1] > 2 * u[0])
        tc.verdict = TotalCurvature::Verdict::DIVERGES;
    else
        tc.verdict = TotalCurvature::Verdict::INCONCLUSIVE;
    return tc;
}

std::pair<double, double> pullback_check(const WData& w, C z, C dir, double eps) {
    C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z);
    if (!finite(p1) || !finite(p2))
        throw Error(ErrorCode::POLE_HIT, "Gauss map not finite at the point");
    if (degenerate_gap(p1, p2))
        throw Error(ErrorCode::DEGENERATE_METRIC, "metric degenerates at the point");
    double rhs = -gauss_K(w, z) * metric_ds2(w, z) * std::norm(dir);
    ChartPair c{ExtC(p1), ExtC(p2)};
    auto q = [&](double e) {
        C d1 = expr_eval(w.psi1, z + e * dir) - p1;
        C d2 = expr_eval(w.psi2, z + e * dir) - p2;
        return metric_g(c, d1, d2) / (e * e);
    };
    double lhs = 2 * q(eps / 2) - q(eps); // Richardson: cancels the O(eps) term
    return {lhs, rhs};
}

const char* to_string(TotalCurvature::Verdict v) {
    switch (v) {
        case TotalCurvature::Verdict::FINITE: return "FINITE";
        case TotalCurvature::Verdict::DIVERGES: return "DIVERGES";
        default: return "INCONCLUSIVE";
    }
}

} // namespace lgq
