#include "dualbody/numerics.hpp"

#include <atomic>
#include <thread>

namespace dualbody {

// ---------------------------------------------------------------------------
// Brent root
// ---------------------------------------------------------------------------

RootResult brent_root(const std::function<double(double)>& f, double a, double b,
                      double xtol, double ftol, int max_iter) {
    double fa = f(a), fb = f(b);
    int evals = 2;
    if (fa == 0.0) return {a, 0.0, evals};
    if (fb == 0.0) return {b, 0.0, evals};
    if ((fa > 0.0) == (fb > 0.0))
        throw solver_error("brent_root: bracket [" + std::to_string(a) + ", " + std::to_string(b) +
                           "] does not change sign (f = " + std::to_string(fa) + ", " +
                           std::to_string(fb) + ")");
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= ftol) return {b, fb, evals};
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        ++evals;
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return {b, fb, evals};
}

RootResult brent_root_expanding(const std::function<double(double)>& f, double a,
                                double first_step, double hard_limit, double xtol, double ftol) {
    double fa = f(a);
    if (fa == 0.0) return {a, 0.0, 1};
    double step = first_step;
    double lo = a, flo = fa;
    for (int k = 0; k < 200; ++k) {
        double hi = std::min(lo + step, hard_limit);
        double fhi = f(hi);
        if ((fhi > 0.0) != (flo > 0.0) || fhi == 0.0) {
            auto r = brent_root(f, lo, hi, xtol, ftol);
            r.iterations += k + 2;
            return r;
        }
        if (hi >= hard_limit)
            throw solver_error("brent_root_expanding: no sign change up to limit " +
                               std::to_string(hard_limit) + " (f = " + std::to_string(fhi) + ")");
        lo = hi;
        flo = fhi;
        step *= 2.0;
    }
    throw solver_error("brent_root_expanding: expansion stalled");
}

// ---------------------------------------------------------------------------
// Minimization
// ---------------------------------------------------------------------------

MinResult golden_minimize(const std::function<double(double)>& f, double a, double b,
                          double xtol, int max_iter) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    int it = 2;
    while (b - a > xtol && it < max_iter) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    return fc < fd ? MinResult{c, fc, it} : MinResult{d, fd, it};
}

Min2Result nelder_mead_2d(const std::function<double(double, double)>& f, double x0, double y0,
                          double scale, double ftol, int max_iter) {
    struct P { double x, y, f; };
    std::array<P, 3> s{{{x0, y0, f(x0, y0)},
                        {x0 + scale, y0, f(x0 + scale, y0)},
                        {x0, y0 + scale, f(x0, y0 + scale)}}};
    int it = 3;
    auto sort = [&] { std::sort(s.begin(), s.end(), [](const P& a, const P& b) { return a.f < b.f; }); };
    sort();
    while (it < max_iter && std::abs(s[2].f - s[0].f) > ftol) {
        double cx = 0.5 * (s[0].x + s[1].x), cy = 0.5 * (s[0].y + s[1].y);
        double rx = cx + (cx - s[2].x), ry = cy + (cy - s[2].y);
        double fr = f(rx, ry);
        ++it;
        if (fr < s[0].f) {
            double ex = cx + 2.0 * (cx - s[2].x), ey = cy + 2.0 * (cy - s[2].y);
            double fe = f(ex, ey);
            ++it;
            s[2] = fe < fr ? P{ex, ey, fe} : P{rx, ry, fr};
        } else if (fr < s[1].f) {
            s[2] = {rx, ry, fr};
        } else {
            double kx = cx + 0.5 * (s[2].x - cx), ky = cy + 0.5 * (s[2].y - cy);
            double fk = f(kx, ky);
            ++it;
            if (fk < s[2].f) {
                s[2] = {kx, ky, fk};
            } else {
                for (int i = 1; i < 3; ++i) {
                    s[i].x = 0.5 * (s[i].x + s[0].x);
                    s[i].y = 0.5 * (s[i].y + s[0].y);
                    s[i].f = f(s[i].x, s[i].y);
                    ++it;
                }
            }
        }
        sort();
    }
    return {s[0].x, s[0].y, s[0].f, it};
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15 adaptive quadrature
// ---------------------------------------------------------------------------

namespace {

// Nodes/weights for the 15-point Kronrod rule with embedded 7-point Gauss.
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEval {
    double kronrod;
    double err;
};

PanelEval gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
    double hc = 0.5 * (b - a), mid = 0.5 * (a + b);
    double fc = f(mid);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double dx = hc * kXgk[j];
        double f1 = f(mid - dx), f2 = f(mid + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    evals += 15;
    double kr = resk * hc;
    double err = std::abs((resk - resg) * hc);
    // sharpen the raw Gauss/Kronrod gap the usual way
    if (err > 0.0) err = std::min(err, std::pow(200.0 * err, 1.5));
    return {kr, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_depth) {
    if (a == b) return {0.0, 0.0, 0};
    struct Interval { double a, b, val, err; int depth; };
    int evals = 0;
    PanelEval top = gk15(f, a, b, evals);
    std::vector<Interval> heap{{a, b, top.kronrod, top.err, 0}};
    auto cmp = [](const Interval& p, const Interval& q) { return p.err < q.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);
    double total = top.kronrod, toterr = top.err;
    const size_t max_intervals = 20000;
    while (toterr > abs_tol + rel_tol * std::abs(total)) {
        if (heap.empty() || heap.size() > max_intervals)
            throw accuracy_error("integrate: tolerance not reached", toterr);
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Interval worst = heap.back();
        heap.pop_back();
        if (worst.depth >= max_depth) {
            // Interval can no longer be refined; accept its error contribution
            // if everything else is already below tolerance.
            double rest = 0.0;
            for (const auto& iv : heap) rest += iv.err;
            if (rest <= 0.5 * (abs_tol + rel_tol * std::abs(total))) break;
            throw accuracy_error("integrate: max depth reached", toterr);
        }
        double m = 0.5 * (worst.a + worst.b);
        PanelEval l = gk15(f, worst.a, m, evals);
        PanelEval r = gk15(f, m, worst.b, evals);
        total += l.kronrod + r.kronrod - worst.val;
        toterr += l.err + r.err - worst.err;
        heap.push_back({worst.a, m, l.kronrod, l.err, worst.depth + 1});
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back({m, worst.b, r.kronrod, r.err, worst.depth + 1});
        std::push_heap(heap.begin(), heap.end(), cmp);
    }
    return {total, toterr, evals};
}

QuadResult integrate_split(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breakpoints, double abs_tol,
                           double rel_tol) {
    std::vector<double> pts{a};
    for (double t : breakpoints)
        if (t > a && t < b) pts.push_back(t);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    QuadResult out;
    double piece_tol = abs_tol / static_cast<double>(pts.size());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] - pts[i] < 1e-15 * std::max(1.0, std::abs(pts[i]))) continue;
        QuadResult q = integrate(f, pts[i], pts[i + 1], piece_tol, rel_tol);
        out.value += q.value;
        out.error += q.error;
        out.evaluations += q.evaluations;
    }
    return out;
}

QuadResult integrate_periodic(const std::function<double(double)>& f, double period,
                              double abs_tol, int min_points, int max_points) {
    int m = min_points;
    double h = period / m;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += f(i * h);
    double prev = sum * h;
    int evals = m;
    while (m < max_points) {
        // refine by adding the midpoints of the current grid
        double add = 0.0;
        for (int i = 0; i < m; ++i) add += f((i + 0.5) * h);
        evals += m;
        m *= 2;
        h = period / m;
        sum += add;
        double cur = sum * h;
        if (std::abs(cur - prev) <= abs_tol) return {cur, std::abs(cur - prev), evals};
        prev = cur;
    }
    return {prev, abs_tol, evals};  // converged points exhausted; best estimate
}

// ---------------------------------------------------------------------------
// Power-law fit
// ---------------------------------------------------------------------------

namespace {

struct LinFit {
    double a, b, sse;
};

LinFit fit_for_exponent(const std::vector<double>& x, const std::vector<double>& y, double c) {
    // least squares for y = a + b * x^c at fixed c
    size_t m = x.size();
    double s1 = static_cast<double>(m), sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        double t = std::pow(x[i], c);
        sx += t;
        sxx += t * t;
        sy += y[i];
        sxy += t * y[i];
    }
    double det = s1 * sxx - sx * sx;
    if (std::abs(det) < 1e-300) return {sy / s1, 0.0, 1e300};
    double a = (sxx * sy - sx * sxy) / det;
    double b = (s1 * sxy - sx * sy) / det;
    double sse = 0.0;
    for (size_t i = 0; i < m; ++i) {
        double r = y[i] - a - b * std::pow(x[i], c);
        sse += r * r;
    }
    return {a, b, sse};
}

}  // namespace

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                       double c_lo, double c_hi) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    double best_c = c_lo, best_sse = 1e300;
    const int scan = 96;
    for (int i = 0; i <= scan; ++i) {
        double c = c_lo + (c_hi - c_lo) * i / scan;
        double sse = fit_for_exponent(x, y, c).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_c = c;
        }
    }
    double w = (c_hi - c_lo) / scan;
    auto sse_of = [&](double c) { return fit_for_exponent(x, y, c).sse; };
    MinResult mr = golden_minimize(sse_of, std::max(c_lo, best_c - w), std::min(c_hi, best_c + w), 1e-6);
    LinFit fit = fit_for_exponent(x, y, mr.x);

    PowerFit out;
    out.a = fit.a;
    out.b = fit.b;
    out.c = mr.x;
    out.rms_residual = std::sqrt(fit.sse / static_cast<double>(x.size()));

    // leave-one-out spread of the extrapolated limit
    double lo = fit.a, hi = fit.a;
    if (x.size() >= 4) {
        for (size_t drop = 0; drop < x.size(); ++drop) {
            std::vector<double> xs, ys;
            for (size_t i = 0; i < x.size(); ++i)
                if (i != drop) {
                    xs.push_back(x[i]);
                    ys.push_back(y[i]);
                }
            double bc = c_lo, bs = 1e300;
            for (int i = 0; i <= scan; ++i) {
                double c = c_lo + (c_hi - c_lo) * i / scan;
                double sse = fit_for_exponent(xs, ys, c).sse;
                if (sse < bs) {
                    bs = sse;
                    bc = c;
                }
            }
            LinFit lf = fit_for_exponent(xs, ys, bc);
            lo = std::min(lo, lf.a);
            hi = std::max(hi, lf.a);
        }
    }
    out.uncertainty = 0.5 * (hi - lo) + out.rms_residual;
    return out;
}

// ---------------------------------------------------------------------------
// Worker pool
// ---------------------------------------------------------------------------

namespace {
std::atomic<int> g_workers{0};  // 0 = use hardware concurrency
}

void set_worker_count(int k) { g_workers.store(k); }

int worker_count() {
    int k = g_workers.load();
    if (k > 0) return k;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int count, const std::function<void(int)>& fn) {
    int workers = std::min(worker_count(), count);
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(err);
}

}  // namespace dualbody
