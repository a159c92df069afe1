#include "dualbody/grid.hpp"

#include <algorithm>
#include <cmath>

namespace dualbody {

// ---------------------------------------------------------------------------
// canonicalization
// ---------------------------------------------------------------------------

double fold_angle(double theta, Symmetry sym) {
    double t = std::fmod(theta, 2.0 * M_PI);
    if (t < 0) t += 2.0 * M_PI;
    if (t >= M_PI) t -= M_PI;  // central symmetry
    if (sym == Symmetry::Central) return t;
    if (t > 0.5 * M_PI) t = M_PI - t;  // quadrant
    if (sym == Symmetry::AxisSigns) return t;
    if (t > 0.25 * M_PI) t = 0.5 * M_PI - t;  // octant (x >= y >= 0)
    return t;
}

Vec canonicalize(const Vec& v, Symmetry sym) {
    Vec w = v;
    if (sym == Symmetry::Central) {
        // flip so the last nonzero coordinate is positive
        for (int i = w.n - 1; i >= 0; --i) {
            if (w[i] != 0.0) {
                if (w[i] < 0.0) w *= -1.0;
                break;
            }
        }
        return w;
    }
    for (int i = 0; i < w.n; ++i) w[i] = std::abs(w[i]);
    if (sym == Symmetry::SignedPerm)
        std::sort(w.c.begin(), w.c.begin() + w.n, std::greater<double>());
    return w;
}

namespace {

bool is_canonical(const Vec& v, Symmetry sym) {
    if (sym == Symmetry::Central) {
        for (int i = v.n - 1; i >= 0; --i)
            if (v[i] != 0.0) return v[i] > 0.0;
        return false;
    }
    for (int i = 0; i < v.n; ++i)
        if (v[i] < 0.0) return false;
    if (sym == Symmetry::SignedPerm)
        for (int i = 0; i + 1 < v.n; ++i)
            if (v[i] < v[i + 1]) return false;
    return true;
}

// all group images of a canonical direction (may contain duplicates on walls)
std::vector<Vec> orbit(const Vec& v, Symmetry sym) {
    std::vector<Vec> perms{v};
    if (sym == Symmetry::SignedPerm) {
        Vec w = v;
        std::sort(w.c.begin(), w.c.begin() + w.n);
        perms.clear();
        do {
            perms.push_back(w);
        } while (std::next_permutation(w.c.begin(), w.c.begin() + w.n));
    }
    std::vector<Vec> out;
    if (sym == Symmetry::Central) {
        out.push_back(v);
        out.push_back(-v);
        return out;
    }
    int signs = 1 << v.n;
    for (const Vec& p : perms) {
        for (int s = 0; s < signs; ++s) {
            Vec w = p;
            bool skip = false;
            for (int i = 0; i < v.n; ++i) {
                if (s & (1 << i)) {
                    if (w[i] == 0.0) { skip = true; break; }  // sign flip of zero duplicates
                    w[i] = -w[i];
                }
            }
            if (!skip) out.push_back(w);
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// DirectionGrid
// ---------------------------------------------------------------------------

DirectionGrid DirectionGrid::make(int n, int full_size, Symmetry sym) {
    DirectionGrid g;
    g.n_ = n;
    g.full_size_ = full_size;
    g.sym_ = sym;
    if (n == 2) {
        if (full_size < 16 || full_size % 8 != 0)
            throw std::invalid_argument("DirectionGrid: n=2 size must be a multiple of 8, >= 16");
        g.angle_step_ = 2.0 * M_PI / full_size;
        int count;
        switch (sym) {
            case Symmetry::Central: count = full_size / 2; break;           // periodic [0, pi)
            case Symmetry::AxisSigns: count = full_size / 4 + 1; break;     // [0, pi/2]
            case Symmetry::SignedPerm: count = full_size / 8 + 1; break;    // [0, pi/4]
        }
        g.canonical_.reserve(count);
        for (int k = 0; k < count; ++k) g.canonical_.push_back(dir2(g.angle_step_ * k).v);
        g.expanded_.reserve(full_size);
        g.expanded_source_.reserve(full_size);
        for (int k = 0; k < full_size; ++k) {
            double t = fold_angle(g.angle_step_ * k, sym);
            int src = static_cast<int>(std::lround(t / g.angle_step_));
            src = std::clamp(src, 0, count - 1);
            g.expanded_.push_back(dir2(g.angle_step_ * k).v);
            g.expanded_source_.push_back(src);
        }
        return g;
    }
    if (n == 3) {
        if (full_size < 32 || full_size % 2 != 0)
            throw std::invalid_argument("DirectionGrid: n=3 size must be even, >= 32");
        // Fibonacci hemisphere, then antipodal closure
        int half = full_size / 2;
        const double ga = M_PI * (3.0 - std::sqrt(5.0));  // golden angle
        std::vector<Vec> pts;
        pts.reserve(full_size);
        for (int k = 0; k < half; ++k) {
            double z = (k + 0.5) / half;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = ga * k;
            Vec v(r * std::cos(phi), r * std::sin(phi), z);
            pts.push_back(v);
            pts.push_back(-v);
        }
        for (const Vec& v : pts)
            if (is_canonical(v, sym)) g.canonical_.push_back(v);
        if (g.canonical_.empty()) throw std::invalid_argument("DirectionGrid: empty canonical set");
        for (size_t i = 0; i < g.canonical_.size(); ++i) {
            for (const Vec& w : orbit(g.canonical_[i], sym)) {
                g.expanded_.push_back(w);
                g.expanded_source_.push_back(static_cast<int>(i));
            }
        }
        return g;
    }
    throw std::invalid_argument("DirectionGrid: only n = 2,3");
}

DirectionGrid DirectionGrid::for_body(const SymmetricBody& body, int full_size) {
    return make(body.dim(), full_size, body.symmetry());
}

double DirectionGrid::spacing() const {
    if (n_ == 2) return angle_step_;
    return std::sqrt(4.0 * M_PI / static_cast<double>(expanded_.size()));
}

// ---------------------------------------------------------------------------
// DirectionalTable
// ---------------------------------------------------------------------------

DirectionalTable::DirectionalTable(DirectionGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.canonical().size())
        throw std::invalid_argument("DirectionalTable: value count mismatch");
    if (grid_.dim() == 3) build_buckets();
}

double DirectionalTable::sample_folded(long idx) const {
    long count = static_cast<long>(values_.size());
    if (grid_.symmetry() == Symmetry::Central) {
        long m = idx % count;
        if (m < 0) m += count;
        return values_[static_cast<size_t>(m)];
    }
    // reflective at both ends: samples k = 0..count-1 cover [0, L]
    long period = 2 * (count - 1);
    long m = idx % period;
    if (m < 0) m += period;
    if (m >= count) m = period - m;
    return values_[static_cast<size_t>(m)];
}

double DirectionalTable::interp_folded(double t, bool derivative) const {
    double h = grid_.angle_step();
    double x = t / h;
    long j = static_cast<long>(std::floor(x));
    double s = x - j;
    double f0 = sample_folded(j - 1), f1 = sample_folded(j), f2 = sample_folded(j + 1),
           f3 = sample_folded(j + 2);
    if (!derivative) {
        // 4-point Lagrange cubic on a uniform grid
        double a = -s * (s - 1.0) * (s - 2.0) / 6.0;
        double b = (s * s - 1.0) * (s - 2.0) / 2.0;
        double c = -s * (s + 1.0) * (s - 2.0) / 2.0;
        double d = s * (s * s - 1.0) / 6.0;
        return a * f0 + b * f1 + c * f2 + d * f3;
    }
    double da = -(3.0 * s * s - 6.0 * s + 2.0) / 6.0;
    double db = (3.0 * s * s - 4.0 * s - 1.0) / 2.0;
    double dc = -(3.0 * s * s - 2.0 * s - 2.0) / 2.0;
    double dd = (3.0 * s * s - 1.0) / 6.0;
    return (da * f0 + db * f1 + dc * f2 + dd * f3) / h;
}

double DirectionalTable::value_at_angle(double theta) const {
    return interp_folded(fold_angle(theta, grid_.symmetry()), false);
}

double DirectionalTable::derivative_at_angle(double theta) const {
    // chain through the fold: reflections flip the sign of the derivative
    Symmetry sym = grid_.symmetry();
    double t = std::fmod(theta, 2.0 * M_PI);
    if (t < 0) t += 2.0 * M_PI;
    double sign = 1.0;
    if (t >= M_PI) t -= M_PI;
    if (sym != Symmetry::Central && t > 0.5 * M_PI) {
        t = M_PI - t;
        sign = -sign;
    }
    if (sym == Symmetry::SignedPerm && t > 0.25 * M_PI) {
        t = 0.5 * M_PI - t;
        sign = -sign;
    }
    return sign * interp_folded(t, true);
}

double DirectionalTable::value(const Dir& v) const {
    if (grid_.dim() == 2) return value_at_angle(angle_of(v.v));
    Vec q = canonicalize(v.v, grid_.symmetry());
    std::vector<int> nb = neighbors(q, 3);
    if (nb.empty()) throw oracle_error("DirectionalTable: neighbor search failed");
    if (nb.size() == 1) return values_[static_cast<size_t>(grid_.expanded_source()[nb[0]])];

    const auto& pts = grid_.expanded();
    const auto& src = grid_.expanded_source();
    // barycentric weights in the tangent plane at q
    if (nb.size() >= 3) {
        auto frame = orthonormal_frame(Dir(q, false));
        double x1 = dot(pts[nb[0]], frame[0]), y1 = dot(pts[nb[0]], frame[1]);
        double x2 = dot(pts[nb[1]], frame[0]), y2 = dot(pts[nb[1]], frame[1]);
        double x3 = dot(pts[nb[2]], frame[0]), y3 = dot(pts[nb[2]], frame[1]);
        double det = (x1 - x3) * (y2 - y3) - (x2 - x3) * (y1 - y3);
        double area_scale = std::max({std::abs(x1 - x3), std::abs(x2 - x3), std::abs(y1 - y3),
                                      std::abs(y2 - y3), 1e-30});
        if (std::abs(det) > 1e-6 * area_scale * area_scale) {
            double l1 = ((0.0 - x3) * (y2 - y3) - (x2 - x3) * (0.0 - y3)) / det;
            double l2 = ((x1 - x3) * (0.0 - y3) - (0.0 - x3) * (y1 - y3)) / det;
            double l3 = 1.0 - l1 - l2;
            if (l1 > -0.3 && l2 > -0.3 && l3 > -0.3) {
                return l1 * values_[static_cast<size_t>(src[nb[0]])] +
                       l2 * values_[static_cast<size_t>(src[nb[1]])] +
                       l3 * values_[static_cast<size_t>(src[nb[2]])];
            }
        }
    }
    // inverse-distance fallback
    double wsum = 0.0, vsum = 0.0;
    for (int idx : nb) {
        double d = norm2(pts[idx] - q) + 1e-14;
        if (d < 1e-12) return values_[static_cast<size_t>(src[idx])];
        double w = 1.0 / d;
        wsum += w;
        vsum += w * values_[static_cast<size_t>(src[idx])];
    }
    return vsum / wsum;
}

double DirectionalTable::error_estimate() const {
    if (grid_.dim() == 2) {
        // cubic interpolation error ~ |f''''| h^4 / 24 ~ |Delta^4 f| / 24
        double worst = 0.0;
        long count = static_cast<long>(values_.size());
        for (long k = 0; k < count; ++k) {
            double d4 = sample_folded(k - 2) - 4.0 * sample_folded(k - 1) + 6.0 * sample_folded(k)
                      - 4.0 * sample_folded(k + 1) + sample_folded(k + 2);
            worst = std::max(worst, std::abs(d4));
        }
        return worst / 24.0 + 1e-15;
    }
    // second-difference proxy against the three nearest distinct samples
    double worst = 0.0;
    const auto& pts = grid_.expanded();
    const auto& src = grid_.expanded_source();
    int probes = std::min<int>(200, static_cast<int>(grid_.canonical().size()));
    for (int i = 0; i < probes; ++i) {
        const Vec& q = grid_.canonical()[static_cast<size_t>(i)];
        std::vector<int> nb = neighbors(q, 5);
        double mean = 0.0;
        int used = 0;
        for (int idx : nb) {
            if (norm2(pts[idx] - q) < 1e-12) continue;
            mean += values_[static_cast<size_t>(src[idx])];
            ++used;
            if (used == 3) break;
        }
        if (used == 3) worst = std::max(worst, std::abs(values_[static_cast<size_t>(i)] - mean / 3.0));
    }
    return worst + 1e-15;
}

// ---------------------------------------------------------------------------
// n = 3 neighbor buckets
// ---------------------------------------------------------------------------

void DirectionalTable::build_buckets() {
    int npts = static_cast<int>(grid_.expanded().size());
    nb_theta_ = std::max(8, static_cast<int>(std::sqrt(npts / 4.0)));
    nb_phi_ = 2 * nb_theta_;
    buckets_.assign(static_cast<size_t>(nb_theta_ * nb_phi_), {});
    for (int i = 0; i < npts; ++i) {
        const Vec& p = grid_.expanded()[static_cast<size_t>(i)];
        double th = std::acos(std::clamp(p[2], -1.0, 1.0));
        double ph = std::atan2(p[1], p[0]);
        if (ph < 0) ph += 2.0 * M_PI;
        int it = std::min(nb_theta_ - 1, static_cast<int>(th / M_PI * nb_theta_));
        int ip = std::min(nb_phi_ - 1, static_cast<int>(ph / (2.0 * M_PI) * nb_phi_));
        buckets_[static_cast<size_t>(it * nb_phi_ + ip)].push_back(i);
    }
}

std::vector<int> DirectionalTable::neighbors(const Vec& q, int want) const {
    double th = std::acos(std::clamp(q[2], -1.0, 1.0));
    double ph = std::atan2(q[1], q[0]);
    if (ph < 0) ph += 2.0 * M_PI;
    int it0 = std::min(nb_theta_ - 1, static_cast<int>(th / M_PI * nb_theta_));
    int ip0 = std::min(nb_phi_ - 1, static_cast<int>(ph / (2.0 * M_PI) * nb_phi_));

    std::vector<std::pair<double, int>> found;
    for (int ring = 0; ring < nb_theta_; ++ring) {
        for (int dt = -ring; dt <= ring; ++dt) {
            int it = it0 + dt;
            if (it < 0 || it >= nb_theta_) continue;
            bool pole_row = (it == 0 || it == nb_theta_ - 1);
            for (int dp = -ring; dp <= ring; ++dp) {
                if (std::max(std::abs(dt), std::abs(dp)) != ring && !pole_row) continue;
                int ip = ((ip0 + dp) % nb_phi_ + nb_phi_) % nb_phi_;
                for (int idx : buckets_[static_cast<size_t>(it * nb_phi_ + ip)]) {
                    double d = norm2(grid_.expanded()[static_cast<size_t>(idx)] - q);
                    found.emplace_back(d, idx);
                }
            }
        }
        if (static_cast<int>(found.size()) >= want + 3 && ring >= 1) break;
    }
    std::sort(found.begin(), found.end());
    std::vector<int> out;
    for (size_t i = 0; i < found.size() && static_cast<int>(out.size()) < want; ++i)
        out.push_back(found[i].second);
    return out;
}

}  // namespace dualbody
