#include "lgq/wdata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lgq {

Domain Domain::rectangle(double x0, double x1, double y0, double y1) {
    Domain d;
    d.base = Base::RECTANGLE;
    d.x0 = x0;
    d.x1 = x1;
    d.y0 = y0;
    d.y1 = y1;
    return d;
}

Domain Domain::annulus(double r0, double r1) {
    Domain d;
    d.base = Base::ANNULUS;
    d.r0 = r0;
    d.r1 = r1;
    return d;
}

bool Domain::contains(C z) const {
    if (base == Base::RECTANGLE) {
        if (z.real() < x0 || z.real() > x1 || z.imag() < y0 || z.imag() > y1) return false;
    } else {
        double r = std::abs(z);
        if (r < r0 || r > r1) return false;
    }
    for (const C& p : punctures)
        if (z == p) return false;
    return true;
}

double Domain::span() const {
    if (base == Base::RECTANGLE) return std::max(x1 - x0, y1 - y0);
    return 2 * r1;
}

std::vector<C> Domain::samples(int nx, int ny) const {
    std::vector<C> out;
    double avoid = std::max(1e-3, 0.02 * span());
    auto keep = [&](C z) {
        for (const C& p : punctures)
            if (std::abs(z - p) < avoid) return false;
        out.push_back(z);
        return true;
    };
    if (base == Base::RECTANGLE) {
        for (int i = 0; i < ny; ++i)
            for (int j = 0; j < nx; ++j) {
                double x = x0 + (x1 - x0) * (j + 0.5) / nx;
                double y = y0 + (y1 - y0) * (i + 0.5) / ny;
                keep(C{x, y});
            }
    } else {
        double s0 = std::log(r0), s1 = std::log(r1);
        for (int i = 0; i < ny; ++i)
            for (int j = 0; j < nx; ++j) {
                double s = s0 + (s1 - s0) * (i + 0.5) / ny;
                double th = 2 * M_PI * (j + 0.5) / nx;
                keep(std::polar(std::exp(s), th));
            }
    }
    return out;
}

namespace {
bool finite(C v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

struct PhiVals {
    C psi1, psi2, f;
    CVec4 phi;
};

PhiVals eval_phi(const WData& w, C z) {
    PhiVals out;
    out.psi1 = expr_eval(w.psi1, z);
    out.psi2 = expr_eval(w.psi2, z);
    out.f = expr_eval(w.f, z);
    const C i{0, 1};
    C p12 = out.psi1 * out.psi2;
    out.phi = {(out.psi1 + out.psi2) * out.f, -i * (out.psi1 - out.psi2) * out.f,
               (C{1} - p12) * out.f, (C{1} + p12) * out.f};
    return out;
}

std::array<Expr, 4> phi_exprs(const WData& w) {
    const Expr i = expr_const(C{0, 1});
    const Expr one = expr_const(C{1});
    Expr p12 = emul(w.psi1, w.psi2);
    return {emul(eadd(w.psi1, w.psi2), w.f),
            emul(emul(eneg(i), esub(w.psi1, w.psi2)), w.f),
            emul(esub(one, p12), w.f), emul(eadd(one, p12), w.f)};
}
} // namespace

CVec4 phi_from_wdata(const WData& w, C z) {
    PhiVals v = eval_phi(w, z);
    for (int k = 0; k < 4; ++k)
        if (!finite(v.phi[k])) throw Error(ErrorCode::POLE_HIT, "phi not finite at the point");
    return v.phi;
}

double metric_ds2(const WData& w, C z) {
    C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z), fv = expr_eval(w.f, z);
    double g = 2.0 * std::norm(p1 - std::conj(p2)) * std::norm(fv);
    if (!std::isfinite(g)) throw Error(ErrorCode::POLE_HIT, "metric not finite at the point");
    return g;
}

bool degenerate_gap(C psi1v, C psi2v) {
    return std::abs(psi2v - std::conj(psi1v)) <
           1e-10 * (1 + std::abs(psi1v)) * (1 + std::abs(psi2v));
}

double gauss_K(const WData& w, C z) {
    C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z), fv = expr_eval(w.f, z);
    if (!finite(p1) || !finite(p2) || !finite(fv))
        throw Error(ErrorCode::POLE_HIT, "W-data not finite at the point");
    if (degenerate_gap(p1, p2))
        throw Error(ErrorCode::DEGENERATE_METRIC, "metric degenerates at the point");
    if (std::abs(fv) < 1e-14 * (1 + std::abs(p1)) * (1 + std::abs(p2)))
        throw Error(ErrorCode::DEGENERATE_METRIC, "dh vanishes at the point");
    C a = expr_eval(expr_diff(w.psi1), z) / fv; // derivative with respect to h
    C b = expr_eval(expr_diff(w.psi2), z) / fv;
    C d = p1 - std::conj(p2);
    double d2 = std::norm(d);
    double K = -2.0 * (std::conj(a) * b * d * d).real() / (d2 * d2 * d2);
    if (!std::isfinite(K)) throw Error(ErrorCode::DEGENERATE_METRIC, "curvature overflow");
    return K;
}

C loop_integral(const Expr& expr, const Expr& f, const Loop& loop) {
    auto trap = [&](int n) {
        C acc{0};
        for (int k = 0; k < n; ++k) {
            double th = 2 * M_PI * k / n;
            C z = loop.center + std::polar(loop.radius, th);
            C dz = C{0, 1} * (z - loop.center); // d/dth of the circle point
            acc += expr_eval(expr, z) * expr_eval(f, z) * dz;
        }
        return acc * (2 * M_PI / (double)n);
    };
    C prev = trap(256);
    for (int n = 512; n <= 16384; n *= 2) {
        C cur = trap(n);
        if (std::abs(cur - prev) <= 1e-9 * (1 + std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

WReport wdata_validate(const WData& w, int grid) {
    WReport rep;

    // (a) degenerate-gap sampling, then Newton refinement of the best sample
    // cells on g(z) = psi2(z) - conj(psi1(z)) (a grid alone cannot certify a
    // vanishing gap)
    rep.min_gap = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, C>> ranked;
    for (C z : w.domain.samples(grid, grid)) {
        C p1 = expr_eval(w.psi1, z), p2 = expr_eval(w.psi2, z);
        if (!finite(p1) || !finite(p2)) continue;
        double gap = std::abs(p2 - std::conj(p1));
        ranked.push_back({gap, z});
        if (gap < rep.min_gap) {
            rep.min_gap = gap;
            rep.min_gap_at = z;
        }
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Expr dpsi1 = expr_diff(w.psi1), dpsi2 = expr_diff(w.psi2);
    for (size_t s = 0; s < ranked.size() && s < 5; ++s) {
        C z = ranked[s].second;
        for (int it = 0; it < 50; ++it) {
            C p1, p2, d1, d2;
            try {
                p1 = expr_eval(w.psi1, z);
                p2 = expr_eval(w.psi2, z);
                d1 = expr_eval(dpsi1, z);
                d2 = expr_eval(dpsi2, z);
            } catch (const Error&) {
                break;
            }
            if (!finite(p1) || !finite(p2) || !finite(d1) || !finite(d2)) break;
            C g = p2 - std::conj(p1);
            if (w.domain.contains(z) && std::abs(g) < rep.min_gap) {
                rep.min_gap = std::abs(g);
                rep.min_gap_at = z;
            }
            // dg/dz = psi2', dg/dconj(z) = -conj(psi1')
            C gx = d2 - std::conj(d1), gy = C{0, 1} * (d2 + std::conj(d1));
            double a = gx.real(), b = gy.real(), c = gx.imag(), d = gy.imag();
            double det = a * d - b * c;
            if (!std::isfinite(det) || std::abs(det) < 1e-300) break;
            double dx = (-g.real() * d + g.imag() * b) / det;
            double dy = (g.real() * c - g.imag() * a) / det;
            z += C{dx, dy};
            if (!finite(z) || std::hypot(dx, dy) <= 1e-15 * (1 + std::abs(z))) {
                if (w.domain.contains(z)) {
                    try {
                        C q1 = expr_eval(w.psi1, z), q2 = expr_eval(w.psi2, z);
                        double gap = std::abs(q2 - std::conj(q1));
                        if (finite(q1) && finite(q2) && gap < rep.min_gap) {
                            rep.min_gap = gap;
                            rep.min_gap_at = z;
                        }
                    } catch (const Error&) {
                    }
                }
                break;
            }
        }
    }
    rep.gap_flag = rep.min_gap < 1e-9;

    // (b) order matching at declared punctures and interior zeros of f
    auto phis = phi_exprs(w);
    std::vector<C> checkpoints = w.domain.punctures;
    std::vector<bool> declared(checkpoints.size(), true);
    {
        // scan for zeros of f inside the domain, refine by Newton on f
        Expr df = expr_diff(w.f);
        for (C z : w.domain.samples(60, 60)) {
            C v = expr_eval(w.f, z);
            if (!finite(v) || std::abs(v) > 1e-4) continue;
            C root = z;
            bool converged = false;
            for (int it = 0; it < 60; ++it) {
                C fv = expr_eval(w.f, root), dv = expr_eval(df, root);
                if (!finite(fv) || !finite(dv) || std::abs(dv) < 1e-300) break;
                C step = fv / dv;
                root -= step;
                if (std::abs(step) < 1e-13 * (1 + std::abs(root))) {
                    converged = true;
                    break;
                }
            }
            if (!converged || !finite(root)) continue;
            if (std::abs(expr_eval(w.f, root)) > 1e-10) continue;
            if (!w.domain.contains(root)) continue;
            bool dup = false;
            for (const C& p : checkpoints)
                if (std::abs(root - p) < 1e-6) dup = true;
            if (!dup) {
                checkpoints.push_back(root);
                declared.push_back(false);
            }
        }
    }
    for (size_t idx = 0; idx < checkpoints.size(); ++idx) {
        PunctureCheck pc;
        pc.p = checkpoints[idx];
        pc.declared = declared[idx];
        auto safe_order = [&](const Expr& e) {
            try {
                return order_at(e, pc.p);
            } catch (const Error&) {
                return 0;
            }
        };
        pc.ord_f = safe_order(w.f);
        pc.ord_psi1 = safe_order(w.psi1);
        pc.ord_psi2 = safe_order(w.psi2);
        for (int k = 0; k < 4; ++k) pc.ord_phi[k] = safe_order(phis[k]);
        if (pc.declared) {
            // removed from the domain: orders are informational (an end may
            // legitimately carry poles of psi or phi)
            pc.ok = true;
        } else {
            // interior zero of dh: a pole of psi_i must cancel it exactly
            // ("p is a zero of dh iff p is a pole of psi_i"), leaving the
            // metric positive and phi regular at p
            int pole = std::max({-std::min(pc.ord_psi1, 0), -std::min(pc.ord_psi2, 0), 0});
            bool phi_regular = true;
            for (int k = 0; k < 4; ++k) phi_regular = phi_regular && pc.ord_phi[k] >= 0;
            pc.ok = (pole == pc.ord_f) && phi_regular;
        }
        rep.punctures.push_back(pc);
    }

    // (c) loop-period identities
    const Expr one = expr_const(C{1});
    for (const Loop& loop : w.domain.loops) {
        LoopCheck lc;
        lc.loop = loop;
        lc.per_psi1dh = loop_integral(w.psi1, w.f, loop);
        lc.per_psi2dh = loop_integral(w.psi2, w.f, loop);
        lc.per_dh = loop_integral(one, w.f, loop);
        lc.per_psi12dh = loop_integral(emul(w.psi1, w.psi2), w.f, loop);
        double scale = 1 + std::abs(lc.per_psi1dh) + std::abs(lc.per_psi2dh) +
                       std::abs(lc.per_dh) + std::abs(lc.per_psi12dh);
        lc.resid_conj = std::abs(lc.per_psi1dh + std::conj(lc.per_psi2dh));
        lc.resid_re_dh = std::abs(lc.per_dh.real());
        lc.resid_re_psi12 = std::abs(lc.per_psi12dh.real());
        double tol = 1e-8 * scale;
        lc.ok = lc.resid_conj <= tol && lc.resid_re_dh <= tol && lc.resid_re_psi12 <= tol;
        rep.loops.push_back(lc);
    }

    rep.all_ok = !rep.gap_flag;
    for (const auto& pc : rep.punctures) rep.all_ok = rep.all_ok && pc.ok;
    for (const auto& lc : rep.loops) rep.all_ok = rep.all_ok && lc.ok;
    return rep;
}

namespace {
void require_nonvanishing(const Expr& e, const Domain& d, const char* what) {
    // scan for the smallest |e| on a grid, then chase the candidate zero with
    // Newton; a sample check alone only catches zeros sitting on grid points
    C best{};
    double bestv = std::numeric_limits<double>::infinity();
    for (C z : d.samples(25, 25)) {
        C v = expr_eval(e, z);
        if (finite(v) && std::abs(v) < bestv) {
            bestv = std::abs(v);
            best = z;
        }
    }
    Expr de = expr_diff(e);
    C z = best;
    for (int it = 0; it < 40; ++it) {
        C v = expr_eval(e, z), dv = expr_eval(de, z);
        if (!finite(v) || !finite(dv) || std::abs(dv) < 1e-14) break;
        C step = v / dv;
        z -= step;
        if (std::abs(step) < 1e-14) break;
    }
    C v = expr_eval(e, z);
    if (d.contains(z) && finite(v) && std::abs(v) < 1e-9)
        throw Error(ErrorCode::FAMILY_PRECONDITION_FAILED,
                    std::string(what) + " vanishes on the domain near z = (" +
                        std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
}
} // namespace

WData family_hyperbolic(Expr psi, Expr f, double u, Domain domain) {
    if (!(u > 0)) throw Error(ErrorCode::FAMILY_PRECONDITION_FAILED, "u must be positive");
    require_nonvanishing(psi, domain, "psi");
    require_nonvanishing(f, domain, "dh");
    WData w;
    w.psi1 = psi;
    w.psi2 = emul(expr_const(C{std::exp(2 * u)}), psi);
    w.f = f;
    w.domain = std::move(domain);
    w.name = "family-hyperbolic";
    return w;
}

WData family_elliptic(Expr psi, Expr g, double alpha, Domain domain) {
    // accept the closed endpoint up to decimal rounding (e.g. 1.5708) and
    // snap it back; the endpoint gives the associated minimal surface in R^3
    if (alpha > M_PI / 2 && alpha < M_PI / 2 + 1e-4) alpha = M_PI / 2;
    if (!(alpha > 0) || alpha > M_PI / 2)
        throw Error(ErrorCode::FAMILY_PRECONDITION_FAILED, "alpha must lie in (0, pi/2]");
    // zeros of omega = g dz must match zeros/poles of psi: both g*psi and
    // g/psi stay bounded on the domain (sample check)
    for (C z : domain.samples(25, 25)) {
        C gv = expr_eval(g, z), pv = expr_eval(psi, z);
        if (!finite(gv) || !finite(pv)) continue;
        double b1 = std::abs(gv * pv);
        double b2 = std::abs(pv) > 0 ? std::abs(gv / pv) : std::numeric_limits<double>::infinity();
        if (!std::isfinite(b1) || !std::isfinite(b2) || b1 > 1e9 || b2 > 1e9)
            throw Error(ErrorCode::FAMILY_PRECONDITION_FAILED,
                        "omega does not match the zeros/poles of psi on the domain");
    }
    WData w;
    C ph = std::exp(C{0, alpha});
    w.psi1 = psi;
    w.psi2 = ediv(expr_const(C{1} / (ph * ph)), psi);
    w.f = emul(expr_const(ph), g);
    w.domain = std::move(domain);
    w.name = "family-elliptic";
    return w;
}

WData family_parabolic(Expr psi, Expr f, Domain domain) {
    require_nonvanishing(f, domain, "dh");
    WData w;
    w.psi1 = psi;
    w.psi2 = eadd(psi, expr_const(C{1}));
    w.f = f;
    w.domain = std::move(domain);
    w.name = "family-parabolic";
    return w;
}

} // namespace lgq
