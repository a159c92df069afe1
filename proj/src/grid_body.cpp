#include "dualbody/grid_body.hpp"

#include <cmath>

namespace dualbody {

RadialGridBody::RadialGridBody(DirectionGrid grid, std::vector<double> radial_values,
                               std::string label)
    : table_(std::move(grid), std::move(radial_values)), label_(std::move(label)) {
    for (double r : table_.values())
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("RadialGridBody: radial values must be positive finite");
    grid_tolerance_ = table_.error_estimate();
    compute_volume();
}

std::shared_ptr<RadialGridBody> RadialGridBody::from_radial_fn(
    const std::function<double(const Dir&)>& fn, DirectionGrid grid, std::string label) {
    std::vector<double> vals;
    vals.reserve(grid.canonical().size());
    for (const Vec& v : grid.canonical()) vals.push_back(fn(Dir(v, false)));
    auto body = std::make_shared<RadialGridBody>(std::move(grid), std::move(vals), std::move(label));

    // measure the actual interpolation error on off-grid probes
    double worst = 0.0;
    const DirectionGrid& g = body->grid();
    if (g.dim() == 2) {
        int count = g.canonical_count();
        for (int k = 0; k + 1 < count; ++k) {
            double t = g.canonical_angle(k) + 0.5 * g.angle_step();
            Dir d = dir2(t);
            worst = std::max(worst, std::abs(body->radial(d) - fn(d)));
        }
    } else {
        CounterRng rng(12345);
        for (int k = 0; k < 500; ++k) {
            Vec v(3);
            double z = 2.0 * rng.uniform(2 * k) - 1.0;
            double ph = 2.0 * M_PI * rng.uniform(2 * k + 1);
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            v = Vec(r * std::cos(ph), r * std::sin(ph), z);
            Dir d(v, false);
            worst = std::max(worst, std::abs(body->radial(d) - fn(d)));
        }
    }
    body->set_grid_tolerance(worst * 1.5 + 1e-14);
    return body;
}

double RadialGridBody::support(const Dir& u) const {
    const DirectionGrid& g = grid();
    if (g.dim() == 2) {
        double tu = angle_of(u.v);
        // coarse scan over the half-circle facing u, then golden polish of the
        // interpolated objective; for a convex curve <x(t),u> is unimodal
        double h = g.angle_step();
        int steps = g.full_size() / 2;
        double best = -1e300, best_t = tu;
        for (int k = -steps / 2; k <= steps / 2; ++k) {
            double t = tu + k * h;
            double val = table_.value_at_angle(t) * std::cos(t - tu);
            if (val > best) {
                best = val;
                best_t = t;
            }
        }
        auto f = [&](double t) { return -table_.value_at_angle(t) * std::cos(t - tu); };
        MinResult m = golden_minimize(f, best_t - h, best_t + h, 1e-12);
        return std::max(best, -m.f);
    }
    // n = 3: scan the orbit, then Nelder-Mead on the interpolated radial
    const auto& pts = g.expanded();
    const auto& src = g.expanded_source();
    double best = -1e300;
    Vec best_w = pts[0];
    for (size_t i = 0; i < pts.size(); ++i) {
        double val = table_.values()[static_cast<size_t>(src[i])] * dot(pts[i], u.v);
        if (val > best) {
            best = val;
            best_w = pts[i];
        }
    }
    auto frame = orthonormal_frame(Dir(best_w, false));
    auto f = [&](double a, double b) {
        Vec w = best_w + a * frame[0] + b * frame[1];
        Dir d(w);
        return -table_.value(d) * dot(d.v, u.v);
    };
    double s = g.spacing();
    Min2Result m = nelder_mead_2d(f, 0.0, 0.0, s, 1e-14, 200);
    Min2Result m2 = nelder_mead_2d(f, m.x, m.y, 0.1 * s, 1e-15, 150);
    return std::max(best, -m2.f);
}

Dir RadialGridBody::normal(const Vec& x) const {
    if (dim() == 2) {
        double t = angle_of(x);
        double rho = table_.value_at_angle(t);
        double drho = table_.derivative_at_angle(t);
        double c = std::cos(t), s = std::sin(t);
        // outer normal of the curve rho(t) (cos t, sin t)
        Vec nvec(drho * s + rho * c, -drho * c + rho * s);
        return Dir(nvec);
    }
    // n = 3: least-squares plane through nearby sampled boundary points
    double r = norm2(x);
    Vec q = x;
    q *= 1.0 / r;
    const auto& pts = grid().expanded();
    const auto& src = grid().expanded_source();
    std::vector<std::pair<double, int>> near;
    for (size_t i = 0; i < pts.size(); ++i) near.emplace_back(norm2(pts[i] - q), static_cast<int>(i));
    std::partial_sort(near.begin(), near.begin() + 12, near.end());
    Vec centroid(3);
    std::vector<Vec> bps;
    for (int i = 0; i < 12; ++i) {
        int idx = near[static_cast<size_t>(i)].second;
        Vec bp = table_.values()[static_cast<size_t>(src[idx])] * pts[static_cast<size_t>(idx)];
        bps.push_back(bp);
        centroid += bp;
    }
    centroid *= 1.0 / 12.0;
    double sxx = 0, sxy = 0, sxz = 0, syy = 0, syz = 0, szz = 0;
    for (const Vec& bp : bps) {
        Vec d = bp - centroid;
        sxx += d[0] * d[0]; sxy += d[0] * d[1]; sxz += d[0] * d[2];
        syy += d[1] * d[1]; syz += d[1] * d[2]; szz += d[2] * d[2];
    }
    // smallest-eigenvector by a few inverse-power steps on the 3x3 covariance
    Mat cov(3);
    cov.at(0, 0) = sxx; cov.at(0, 1) = sxy; cov.at(0, 2) = sxz;
    cov.at(1, 0) = sxy; cov.at(1, 1) = syy; cov.at(1, 2) = syz;
    cov.at(2, 0) = sxz; cov.at(2, 1) = syz; cov.at(2, 2) = szz;
    double shift = 1e-9 * (sxx + syy + szz + 1e-30);
    for (int i = 0; i < 3; ++i) cov.at(i, i) += shift;
    Mat inv = cov.inverse();
    Vec v = q;
    for (int it = 0; it < 20; ++it) {
        v = inv.apply(v);
        v *= 1.0 / norm2(v);
    }
    if (dot(v, q) < 0) v *= -1.0;
    return Dir(v);
}

double RadialGridBody::curvature(const Vec&) const {
    throw oracle_error("RadialGridBody: curvature oracle unavailable for tabulated bodies");
}

std::shared_ptr<const SymmetricBody> RadialGridBody::polar() const {
    std::vector<double> vals;
    vals.reserve(grid().canonical().size());
    for (const Vec& v : grid().canonical()) vals.push_back(1.0 / support(Dir(v, false)));
    auto out = std::make_shared<RadialGridBody>(grid(), std::move(vals), "polar of " + label_);
    out->set_grid_tolerance(std::max(out->grid_tolerance(), grid_tolerance_));
    return out;
}

void RadialGridBody::compute_volume() {
    const DirectionGrid& g = grid();
    if (g.dim() == 2) {
        auto f = [&](double t) {
            double r = table_.value_at_angle(t);
            return 0.5 * r * r;
        };
        QuadResult q = integrate(f, 0.0, 2.0 * M_PI, 1e-11, 1e-12);
        volume_ = q.value;
        volume_error_ = q.error + 2.0 * M_PI * grid_tolerance_;
        return;
    }
    // equal-weight quadrature over the orbit; error from half-sample split
    const auto& src = g.expanded_source();
    double sum = 0.0, half = 0.0;
    size_t m = src.size();
    for (size_t i = 0; i < m; ++i) {
        double r = table_.values()[static_cast<size_t>(src[i])];
        double t = r * r * r / 3.0;
        sum += t;
        if (i % 2 == 0) half += t;
    }
    volume_ = 4.0 * M_PI * sum / static_cast<double>(m);
    double vhalf = 4.0 * M_PI * half / (0.5 * static_cast<double>(m));
    volume_error_ = std::abs(volume_ - vhalf) + 4.0 * M_PI * grid_tolerance_;
}

double RadialGridBody::max_convexity_violation(int probe_count) const {
    const DirectionGrid& g = grid();
    double worst = -1e300;
    if (g.dim() == 2) {
        int m = probe_count;
        std::vector<Vec> pts(static_cast<size_t>(m));
        std::vector<Vec> nrm(static_cast<size_t>(m));
        std::vector<double> off(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            double t = 2.0 * M_PI * i / m;
            double r = table_.value_at_angle(t);
            pts[static_cast<size_t>(i)] = Vec(r * std::cos(t), r * std::sin(t));
            Dir u = normal(pts[static_cast<size_t>(i)]);
            nrm[static_cast<size_t>(i)] = u.v;
            off[static_cast<size_t>(i)] = dot(pts[static_cast<size_t>(i)], u.v);
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                worst = std::max(worst, dot(pts[static_cast<size_t>(i)], nrm[static_cast<size_t>(j)]) -
                                            off[static_cast<size_t>(j)]);
        return worst;
    }
    const auto& canon = g.canonical();
    int m = std::min<int>(probe_count, static_cast<int>(canon.size()));
    std::vector<Vec> pts(static_cast<size_t>(m));
    std::vector<Vec> nrm(static_cast<size_t>(m));
    std::vector<double> off(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        Vec x = table_.values()[static_cast<size_t>(i)] * canon[static_cast<size_t>(i)];
        pts[static_cast<size_t>(i)] = x;
        Dir u = normal(x);
        nrm[static_cast<size_t>(i)] = u.v;
        off[static_cast<size_t>(i)] = dot(x, u.v);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            worst = std::max(worst, dot(pts[static_cast<size_t>(i)], nrm[static_cast<size_t>(j)]) -
                                        off[static_cast<size_t>(j)]);
    return worst;
}

}  // namespace dualbody
