#include "lgq/bianalytic.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>

namespace lgq {

namespace {

double maxnorm(const std::vector<C>& p) {
    double m = 0;
    for (const C& c : p) m = std::max(m, std::abs(c));
    return m;
}

std::vector<C> trim_leading(std::vector<C> p, double eps) {
    while (p.size() > 1 && std::abs(p.back()) <= eps) p.pop_back();
    if (p.empty()) p.push_back(C{0});
    return p;
}

// remainder of a / b (deg b >= 0, b.back() != 0)
std::vector<C> poly_rem(std::vector<C> a, const std::vector<C>& b) {
    int db = (int)b.size() - 1;
    while ((int)a.size() - 1 >= db && !(a.size() == 1 && a[0] == C{0})) {
        int da = (int)a.size() - 1;
        C q = a.back() / b.back();
        for (int j = 0; j <= db; ++j) a[da - db + j] -= q * b[j];
        a.pop_back();
        while (a.size() > 1 && std::abs(a.back()) == 0.0) a.pop_back();
        if ((int)a.size() - 1 < db) break;
    }
    return a;
}

// degree of gcd(a, b) with a max-norm zero threshold
int gcd_degree(std::vector<C> a, std::vector<C> b, double tol) {
    auto norm_unit = [](std::vector<C>& p) {
        double n = maxnorm(p);
        if (n > 0)
            for (C& c : p) c /= n;
    };
    norm_unit(a);
    norm_unit(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (true) {
        if (maxnorm(b) <= tol) return (int)a.size() - 1 >= 1 ? (int)a.size() - 1 : 0;
        std::vector<C> r = poly_rem(a, b);
        r = trim_leading(std::move(r), tol);
        if (maxnorm(r) <= tol) return (int)b.size() - 1;
        a = std::move(b);
        b = std::move(r);
        norm_unit(b);
    }
}

bool finite(C v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// coefficients of p(x + lam)
std::vector<C> taylor_shift(std::vector<C> p, C lam) {
    int n = (int)p.size();
    for (int i = 0; i < n; ++i)
        for (int j = n - 2; j >= i; --j) p[j] += lam * p[j + 1];
    return p;
}

// ~F(zeta) = zeta^m p(lam + 1/zeta): shift then reverse, padded to degree m
std::vector<C> shift_reverse(const std::vector<C>& p, C lam, int m) {
    std::vector<C> q = taylor_shift(p, lam);
    q.resize(m + 1, C{0});
    std::reverse(q.begin(), q.end());
    return q;
}

} // namespace

C poly_eval(const std::vector<C>& p, C w) {
    C acc{0};
    for (size_t j = p.size(); j-- > 0;) acc = acc * w + p[j];
    return acc;
}

std::vector<C> poly_deriv(const std::vector<C>& p) {
    if (p.size() <= 1) return {C{0}};
    std::vector<C> d(p.size() - 1);
    for (size_t j = 1; j < p.size(); ++j) d[j - 1] = (double)j * p[j];
    return d;
}

RationalFn::RationalFn(std::vector<C> P_, std::vector<C> Q_, double tol)
    : P(std::move(P_)), Q(std::move(Q_)) {
    if (P.empty()) P.push_back(C{0});
    if (Q.empty()) throw Error(ErrorCode::DEGENERATE_INPUT, "empty denominator");
    for (const C& c : P)
        if (!finite(c)) throw Error(ErrorCode::DEGENERATE_INPUT, "non-finite coefficient");
    for (const C& c : Q)
        if (!finite(c)) throw Error(ErrorCode::DEGENERATE_INPUT, "non-finite coefficient");
    double scale = std::max(maxnorm(P), maxnorm(Q));
    if (scale == 0 || maxnorm(Q) <= 1e-14 * scale)
        throw Error(ErrorCode::DEGENERATE_INPUT, "denominator is (numerically) zero");
    P = trim_leading(std::move(P), 1e-12 * scale);
    Q = trim_leading(std::move(Q), 1e-12 * scale);
    scale = std::max(maxnorm(P), maxnorm(Q));
    for (C& c : P) c /= scale;
    for (C& c : Q) c /= scale;
    if (maxnorm(P) > 0 && gcd_degree(P, Q, tol) >= 1)
        throw Error(ErrorCode::NONCOPRIME, "P and Q share a (numerical) common factor");
    if (maxnorm(P) == 0 && (int)Q.size() - 1 >= 1)
        throw Error(ErrorCode::NONCOPRIME, "zero numerator with nonconstant denominator");
    m = std::max(degP(), degQ());
}

C RationalFn::eval(C w) const { return poly_eval(P, w) / poly_eval(Q, w); }
C RationalFn::F(C w) const { return poly_eval(P, w) - std::conj(w) * poly_eval(Q, w); }
C RationalFn::deriv(C w) const {
    C p = poly_eval(P, w), q = poly_eval(Q, w);
    C dp = poly_eval(poly_deriv(P), w), dq = poly_eval(poly_deriv(Q), w);
    return (dp * q - p * dq) / (q * q);
}

Contour Contour::circle(C center, double radius) {
    Contour c;
    c.is_circle = true;
    c.center = center;
    c.radius = radius;
    return c;
}

Contour Contour::rect(double x0, double x1, double y0, double y1) {
    Contour c;
    c.is_circle = false;
    c.x0 = x0;
    c.x1 = x1;
    c.y0 = y0;
    c.y1 = y1;
    return c;
}

C Contour::point(double t) const {
    if (is_circle) return center + std::polar(radius, 2 * M_PI * t);
    double w = x1 - x0, h = y1 - y0, per = 2 * (w + h);
    double s = t * per;
    if (s < w) return {x0 + s, y0};
    s -= w;
    if (s < h) return {x1, y0 + s};
    s -= h;
    if (s < w) return {x1 - s, y1};
    s -= w;
    return {x0, y1 - std::min(s, h)};
}

namespace {

int winding_capped(const std::function<C(C)>& G, const Contour& contour, int nodes, int cap) {
    int prev = INT_MIN;
    for (int n = std::max(8, nodes); n <= cap; n *= 2) {
        double total = 0, minabs = std::numeric_limits<double>::infinity(), maxabs = 0;
        bool ok = true;
        C g0 = G(contour.point(0.0));
        if (!finite(g0) || std::abs(g0) < 1e-280)
            throw Error(ErrorCode::CONTOUR_THROUGH_ZERO, "contour sample at (or near) a zero");
        C gp = g0;
        for (int k = 1; k <= n; ++k) {
            C g = (k == n) ? g0 : G(contour.point((double)k / n));
            if (!finite(g) || std::abs(g) < 1e-280)
                throw Error(ErrorCode::CONTOUR_THROUGH_ZERO,
                            "contour sample at (or near) a zero");
            double ab = std::abs(g);
            minabs = std::min(minabs, ab);
            maxabs = std::max(maxabs, ab);
            double d = std::arg(g / gp);
            if (std::abs(d) >= M_PI / 2) {
                ok = false;
                break;
            }
            total += d;
            gp = g;
        }
        if (!ok) {
            if (minabs < 1e-9 * maxabs)
                throw Error(ErrorCode::CONTOUR_THROUGH_ZERO, "contour passes near a zero");
            prev = INT_MIN;
            continue;
        }
        double turns = total / (2 * M_PI);
        int w = (int)std::lround(turns);
        if (std::abs(turns - w) > 0.25) {
            prev = INT_MIN;
            continue;
        }
        if (w == prev) return w;
        prev = w;
    }
    throw Error(ErrorCode::CONTOUR_THROUGH_ZERO,
                "winding did not stabilize; contour passes near a zero");
}

} // namespace

int winding(const std::function<C(C)>& G, const Contour& contour, int nodes) {
    return winding_capped(G, contour, nodes, 1 << 18);
}

NormalizedFn normalize_at_infinity(const RationalFn& f, InfinityGoal goal) {
    const bool inf_solution = f.degP() > f.degQ();
    if (goal == InfinityGoal::EXCLUDE && !inf_solution) return {f, MobiusMat(), false};
    if (goal == InfinityGoal::INCLUDE && inf_solution) return {f, MobiusMat(), false};

    C lam;
    if (goal == InfinityGoal::EXCLUDE) {
        // any point that is neither a pole nor a solution works; fixed list
        const C cand[] = {C{0, 0},  C{1, 0},     C{-1, 0}, C{0, 1},        C{0, -1},
                          C{2, 0},  C{-2, 0},    C{0, 2},  C{0, -2},       C{1, 1},
                          C{1, -1}, C{3, 0},     C{-3, 0}, C{0.5, 1.5},    C{-1.25, 0.75},
                          C{2, 3},  C{-0.5, -2}, C{4, 1},  C{-3.5, 2.25}, C{5, -4}};
        bool found = false;
        for (const C& l : cand) {
            double s = std::max(1.0, std::abs(l));
            double sp = std::pow(s, f.degP()), sq = std::pow(s, f.degQ());
            C qv = poly_eval(f.Q, l);
            C lead = poly_eval(f.P, l) - std::conj(l) * qv;
            if (std::abs(qv) > 1e-6 * sq && std::abs(lead) > 1e-6 * (sp + std::abs(l) * sq)) {
                lam = l;
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorCode::DEGENERATE_INPUT,
                        "no candidate conjugation point avoids the poles and solutions");
    } else {
        // send one genuine solution to infinity
        EfResult ef = solve_Ef(f);
        if (ef.kind == EfResult::Kind::CIRCLINE) {
            lam = ef.circline.is_line ? ef.circline.point
                                      : ef.circline.center + C{ef.circline.radius, 0};
        } else if (!ef.roots.empty()) {
            lam = ef.roots.front().root;
        } else {
            throw Error(ErrorCode::DEGENERATE_INPUT,
                        "no finite solution available to send to infinity");
        }
    }

    int m = f.m;
    std::vector<C> Pt = shift_reverse(f.P, lam, m);
    std::vector<C> Qt = shift_reverse(f.Q, lam, m);
    // new variable zeta = 1/(w - lam):  f_new = Qt / (Pt - conj(lam) Qt)
    std::vector<C> newP = Qt, newQ(m + 1);
    for (int j = 0; j <= m; ++j) newQ[j] = Pt[j] - std::conj(lam) * Qt[j];
    NormalizedFn out{RationalFn(newP, newQ), MobiusMat(C{0}, C{1}, C{1}, -lam), true};
    return out;
}

namespace {

// one Newton step chain for F(w) = P(w) - conj(w) Q(w) as a real 2x2 system
bool newton_F(const RationalFn& f, C& w, int iters = 60) {
    std::vector<C> dP = poly_deriv(f.P), dQ = poly_deriv(f.Q);
    for (int it = 0; it < iters; ++it) {
        C Fv = f.F(w);
        C u = poly_eval(dP, w) - std::conj(w) * poly_eval(dQ, w); // dF/dw
        C v = poly_eval(f.Q, w);                                  // -dF/dconj(w)
        C Fx = u - v, Fy = C{0, 1} * (u + v);
        double a = Fx.real(), b = Fy.real(), c = Fx.imag(), d = Fy.imag();
        double det = a * d - b * c;
        if (!std::isfinite(det) || std::abs(det) < 1e-300) return false;
        double dx = (-Fv.real() * d + Fv.imag() * b) / det;
        double dy = (Fv.real() * c - Fv.imag() * a) / det;
        C step{dx, dy};
        w += step;
        if (!finite(w)) return false;
        if (std::abs(step) <= 1e-13 * (1 + std::abs(w))) return true;
    }
    return true; // let the residual check decide
}

double residual_scale(const RationalFn& f, C w) {
    double s = std::max(1.0, std::abs(w));
    return std::pow(s, f.m) * (1 + std::abs(w));
}

struct Cell {
    double x0, x1, y0, y1;
    int wind;
};

// winding of F on a cell boundary with slight inflation retries
int cell_winding(const RationalFn& f, double x0, double x1, double y0, double y1) {
    auto G = [&](C w) { return f.F(w); };
    const double bump[5] = {0.0, 1e-9, 1e-7, 1e-5, 1e-3};
    for (int attempt = 0; attempt < 5; ++attempt) {
        double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        double hx = 0.5 * (x1 - x0) * (1 + bump[attempt]);
        double hy = 0.5 * (y1 - y0) * (1 + bump[attempt]);
        try {
            return winding_capped(G, Contour::rect(cx - hx, cx + hx, cy - hy, cy + hy), 64,
                                  4096);
        } catch (const Error&) {
            if (attempt == 4) throw;
        }
    }
    throw Error(ErrorCode::CONTOUR_THROUGH_ZERO, "cell winding failed");
}

// no zero of F inside the cell when |F(center)| exceeds the Lipschitz bound
// times the half-diagonal
bool lipschitz_excludes(const RationalFn& f, const Cell& c) {
    C center{0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1)};
    double rho = std::hypot(0.5 * (c.x1 - c.x0), 0.5 * (c.y1 - c.y0));
    double Rc = std::abs(center) + rho;
    double L = 0;
    for (size_t j = 1; j < f.P.size(); ++j)
        L += (double)j * std::abs(f.P[j]) * std::pow(Rc, (double)j - 1);
    for (size_t j = 0; j < f.Q.size(); ++j)
        L += std::abs(f.Q[j]) * std::pow(Rc, (double)j);
    for (size_t j = 1; j < f.Q.size(); ++j)
        L += Rc * (double)j * std::abs(f.Q[j]) * std::pow(Rc, (double)j - 1);
    return std::abs(f.F(center)) > L * rho;
}

// isolating box + boundary winding around an isolated root
RootCertificate certify_root(const RationalFn& f, C root, const std::vector<C>& others) {
    RootCertificate cert;
    cert.root = root;
    cert.residual = std::abs(f.F(root));
    double h = 1e-4 * (1 + std::abs(root));
    for (const C& o : others) {
        double d = std::max(std::abs(o.real() - root.real()), std::abs(o.imag() - root.imag()));
        if (d > 0) h = std::min(h, 0.45 * d);
    }
    for (int attempt = 0; attempt < 10; ++attempt) {
        try {
            int w = winding_capped([&](C z) { return f.F(z); },
                                   Contour::rect(root.real() - h, root.real() + h,
                                                 root.imag() - h, root.imag() + h),
                                   64, 1 << 14);
            cert.box_x0 = root.real() - h;
            cert.box_x1 = root.real() + h;
            cert.box_y0 = root.imag() - h;
            cert.box_y1 = root.imag() + h;
            cert.winding = w;
            cert.index = w > 0 ? 1 : (w < 0 ? -1 : 0);
            cert.low_confidence = (w == 0) || (std::abs(w) > 1);
            return cert;
        } catch (const Error&) {
            h *= 0.5;
        }
    }
    cert.low_confidence = true;
    return cert;
}

EfResult solve_mobius(const RationalFn& f) {
    C a = f.P.size() > 1 ? f.P[1] : C{0}, b = f.P[0];
    C c = f.Q.size() > 1 ? f.Q[1] : C{0}, d = f.Q[0];
    MobiusMat S(a, b, c, d);
    EFixSet es = e_set(S);
    EfResult out;
    out.m = f.m;
    if (es.kind == EFixSet::Kind::CIRCLINE) {
        out.kind = EfResult::Kind::CIRCLINE;
        out.circline = es.circline;
        return out;
    }
    std::vector<C> finite_roots;
    for (const ExtC& p : es.points) {
        if (p.inf)
            out.infinity_member = true;
        else
            finite_roots.push_back(p.v);
    }
    for (size_t i = 0; i < finite_roots.size(); ++i) {
        C r = finite_roots[i];
        newton_F(f, r);
        std::vector<C> others;
        for (size_t j = 0; j < finite_roots.size(); ++j)
            if (j != i) others.push_back(finite_roots[j]);
        RootCertificate cert = certify_root(f, r, others);
        out.roots.push_back(cert);
        out.index_sum += cert.winding;
    }
    return out;
}

} // namespace

EfResult solve_Ef(const RationalFn& f) {
    EfResult out;
    out.m = f.m;

    if (f.m == 0) {
        C c = f.P[0] / f.Q[0];
        C root = std::conj(c);
        RootCertificate cert = certify_root(f, root, {});
        out.roots.push_back(cert);
        out.index_sum = cert.winding;
        return out;
    }
    if (f.m == 1) return solve_mobius(f);

    NormalizedFn nf = normalize_at_infinity(f, InfinityGoal::EXCLUDE);
    const RationalFn& g = nf.f;
    out.normalized = nf.moved;
    out.normalizer = nf.M;

    // outer radius: dominant-coefficient bound, then verify the dominant-term
    // homotopy G = -q_m conj(w) w^m on samples (doubling on failure)
    double qm = std::abs(g.Q.back());
    double R = 2 * (1 + maxnorm(g.P) / qm + maxnorm(g.Q) / qm);
    {
        bool ok = false;
        for (int grow = 0; grow < 40 && !ok; ++grow) {
            ok = true;
            for (int k = 0; k < 256 && ok; ++k) {
                C w = std::polar(R, 2 * M_PI * k / 256);
                C G = -g.Q.back() * std::conj(w) * std::pow(w, g.m);
                if (!(std::abs(g.F(w) - G) < 0.9 * std::abs(G))) ok = false;
            }
            if (!ok) R *= 2;
        }
        if (!ok) throw Error(ErrorCode::BUDGET_EXCEEDED, "outer containment radius diverged");
    }

    int root_wind = cell_winding(g, -R, R, -R, R);

    std::deque<Cell> work{Cell{-R, R, -R, R, root_wind}};
    std::vector<C> found;
    std::vector<C> suspicious;
    long budget = 2000000;
    const double floor_side = 1e-6;

    while (!work.empty()) {
        if (--budget < 0)
            throw Error(ErrorCode::BUDGET_EXCEEDED, "subdivision budget exhausted");
        Cell c = work.front();
        work.pop_front();
        double side = std::max(c.x1 - c.x0, c.y1 - c.y0);

        if (c.wind == 0) {
            if (lipschitz_excludes(g, c)) continue;
            if (side <= floor_side) {
                suspicious.push_back(C{0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1)});
                continue;
            }
        } else if (side <= 1e-2) {
            // try Newton from the center; accept only inside this cell
            C w{0.5 * (c.x0 + c.x1), 0.5 * (c.y0 + c.y1)};
            if (newton_F(g, w) && std::abs(g.F(w)) <= 1e-10 * residual_scale(g, w) &&
                w.real() >= c.x0 - 1e-12 && w.real() <= c.x1 + 1e-12 &&
                w.imag() >= c.y0 - 1e-12 && w.imag() <= c.y1 + 1e-12) {
                found.push_back(w);
                continue;
            }
            if (side <= floor_side) {
                suspicious.push_back(w);
                continue;
            }
        }

        double mx = 0.5 * (c.x0 + c.x1), my = 0.5 * (c.y0 + c.y1);
        const double qx[4][2] = {{c.x0, mx}, {mx, c.x1}, {c.x0, mx}, {mx, c.x1}};
        const double qy[4][2] = {{c.y0, my}, {c.y0, my}, {my, c.y1}, {my, c.y1}};
        for (int q = 0; q < 4; ++q) {
            Cell child{qx[q][0], qx[q][1], qy[q][0], qy[q][1], 0};
            if (lipschitz_excludes(g, child)) continue;
            try {
                child.wind = cell_winding(g, child.x0, child.x1, child.y0, child.y1);
            } catch (const Error&) {
                child.wind = c.wind != 0 ? c.wind : 0; // unresolved: keep splitting
                if (std::max(child.x1 - child.x0, child.y1 - child.y0) <= floor_side) {
                    suspicious.push_back(
                        C{0.5 * (child.x0 + child.x1), 0.5 * (child.y0 + child.y1)});
                    continue;
                }
            }
            if (child.wind == 0 && lipschitz_excludes(g, child)) continue;
            work.push_back(child);
        }
    }

    // polish suspicious floor-size cells with a 9-seed Newton fan
    std::vector<C> tangency;
    for (const C& s : suspicious) {
        for (int k = 0; k < 9; ++k) {
            C seed = s;
            if (k > 0) seed += std::polar(2 * floor_side, 2 * M_PI * (k - 1) / 8.0);
            C w = seed;
            if (!newton_F(g, w)) continue;
            if (std::abs(g.F(w)) > 1e-10 * residual_scale(g, w)) continue;
            if (std::abs(w - s) > 8 * floor_side) continue;
            tangency.push_back(w);
            break;
        }
    }

    // dedupe (normalized coordinates)
    auto dedupe = [](std::vector<C>& v, const std::vector<C>& against) {
        std::vector<C> out;
        for (const C& w : v) {
            bool dup = false;
            for (const C& o : against) dup = dup || std::abs(w - o) < 1e-7;
            for (const C& o : out) dup = dup || std::abs(w - o) < 1e-7;
            if (!dup) out.push_back(w);
        }
        v = out;
    };
    dedupe(found, {});
    dedupe(tangency, found);

    // certify in normalized coordinates; index_sum is over these roots
    std::vector<C> all = found;
    all.insert(all.end(), tangency.begin(), tangency.end());
    std::vector<RootCertificate> norm_certs;
    for (size_t i = 0; i < all.size(); ++i) {
        std::vector<C> others;
        for (size_t j = 0; j < all.size(); ++j)
            if (j != i) others.push_back(all[j]);
        RootCertificate cert = certify_root(g, all[i], others);
        if (i >= found.size()) cert.low_confidence = true; // tangency candidate
        out.index_sum += cert.winding;
        norm_certs.push_back(cert);
    }

    if (!nf.moved) {
        out.roots = std::move(norm_certs);
        return out;
    }

    // map back through w = M^{-1}(zeta); zeta ~ 0 is the original infinity
    MobiusMat Minv = nf.M.inverse();
    for (const RootCertificate& nc : norm_certs) {
        ExtC orig = mobius_apply(Minv, ExtC(nc.root));
        if (orig.inf || std::abs(nc.root) < 1e-12) {
            out.infinity_member = true;
            continue;
        }
        C w = orig.v;
        newton_F(f, w);
        if (std::abs(f.F(w)) > 1e-6 * residual_scale(f, w)) {
            // mapping degraded the root beyond repair: keep the pullback value
            w = orig.v;
        }
        std::vector<C> others;
        for (const RootCertificate& oc : norm_certs) {
            if (&oc == &nc) continue;
            ExtC ov = mobius_apply(Minv, ExtC(oc.root));
            if (!ov.inf) others.push_back(ov.v);
        }
        RootCertificate cert = certify_root(f, w, others);
        cert.low_confidence = cert.low_confidence || nc.low_confidence;
        out.roots.push_back(cert);
    }
    return out;
}

int local_index(const RationalFn& f, C root) {
    if (std::abs(f.F(root)) > 1e-4 * residual_scale(f, root))
        throw Error(ErrorCode::NOT_ISOLATED, "point does not solve f(w) = conj(w)");
    double r = std::abs(f.deriv(root));
    if (std::isfinite(r) && std::abs(r - 1) > 1e-6) return r > 1 ? 1 : -1;
    // borderline |f'| = 1: winding on shrinking boxes, two agreeing values
    double h = 1e-3 * (1 + std::abs(root));
    int prev = INT_MIN;
    for (int k = 0; k < 12; ++k, h *= 0.5) {
        int w;
        try {
            w = winding_capped([&](C z) { return f.F(z); },
                               Contour::rect(root.real() - h, root.real() + h,
                                             root.imag() - h, root.imag() + h),
                               64, 1 << 14);
        } catch (const Error&) {
            prev = INT_MIN;
            continue;
        }
        if (w == prev) return w;
        prev = w;
    }
    throw Error(ErrorCode::NOT_ISOLATED, "no stable index on shrinking boxes");
}

BoundsReport bounds_report(const RationalFn& f, const EfResult& ef) {
    BoundsReport r;
    r.m = f.m;
    r.index_sum = ef.index_sum;
    if (ef.kind == EfResult::Kind::CIRCLINE) {
        r.ef_count = -1; // a whole circline, not a finite set
        return r;
    }
    r.ef_count = (int)ef.roots.size() + (ef.infinity_member ? 1 : 0);
    r.q1_lo = r.ef_count;
    r.q1_hi = f.m - r.ef_count + 3;
    r.flat_forced_degree = f.m >= 6;
    r.flat_forced_count = 2 * r.ef_count > f.m + 3;
    r.count_anomaly = r.ef_count < f.m - 1 || r.ef_count > (f.m + 1) * (f.m + 1);
    return r;
}

} // namespace lgq
