#include "dualbody/body.hpp"

#include <cmath>

namespace dualbody {

// ---------------------------------------------------------------------------
// norms and volumes
// ---------------------------------------------------------------------------

double euclidean_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double bp_volume(int n, double p) {
    if (p <= 0.0) throw std::invalid_argument("bp_volume: p must be positive");
    return std::pow(2.0, n) * std::pow(std::tgamma(1.0 + 1.0 / p), n) / std::tgamma(1.0 + n / p);
}

double lp_norm(const Vec& v, double p) {
    double m = 0.0;
    for (int i = 0; i < v.n; ++i) m = std::max(m, std::abs(v[i]));
    if (m == 0.0) return 0.0;
    if (std::isinf(p)) return m;
    double s = 0.0;
    for (int i = 0; i < v.n; ++i) s += std::pow(std::abs(v[i]) / m, p);
    return m * std::pow(s, 1.0 / p);
}

double dual_exponent(double p) {
    if (p < 1.0) throw std::invalid_argument("dual_exponent: p < 1");
    if (p == 1.0) return INFINITY;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

// ---------------------------------------------------------------------------
// SymmetricBody defaults
// ---------------------------------------------------------------------------

Vec SymmetricBody::support_point(const Dir& u) const {
    // generic boundary search: maximize <x(w), u> over the sphere near u
    int n = dim();
    auto value = [&](const Dir& w) { return dot(boundary_point(w), u.v); };
    if (n == 2) {
        double t0 = angle_of(u.v);
        auto f = [&](double t) { return -value(dir2(t)); };
        MinResult m = golden_minimize(f, t0 - M_PI / 2, t0 + M_PI / 2, 1e-12);
        return boundary_point(dir2(m.x));
    }
    if (n == 3) {
        auto frame = orthonormal_frame(u);
        auto lift = [&](double a, double b) {
            Vec w = u.v + a * frame[0] + b * frame[1];
            return Dir(w);
        };
        auto f = [&](double a, double b) { return -value(lift(a, b)); };
        Min2Result m = nelder_mead_2d(f, 0.0, 0.0, 0.3, 1e-14, 400);
        // one shrink-restart around the winner tightens the chart
        Min2Result m2 = nelder_mead_2d(f, m.x, m.y, 1e-3, 1e-15, 200);
        return boundary_point(lift(m2.x, m2.y));
    }
    throw oracle_error("support_point: generic search only for n = 2,3");
}

BodyPtr polar_body(const BodyPtr& body) {
    BodyPtr p = body->polar();
    return p ? p : std::make_shared<PolarView>(body);
}

// ---------------------------------------------------------------------------
// BpBall
// ---------------------------------------------------------------------------

BpBall::BpBall(int n, double p) : n_(n), p_(p) {
    if (n < 2 || n > kMaxDim) throw std::invalid_argument("BpBall: dim out of range");
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("BpBall: need 1 <= p < inf");
    volume_ = bp_volume(n, p);
}

Dir BpBall::normal(const Vec& x) const {
    if (p_ == 1.0) throw oracle_error("BpBall: normals undefined for p = 1");
    if (p_ == 2.0) return Dir(x);
    Vec g(n_);
    for (int i = 0; i < n_; ++i) {
        double a = std::abs(x[i]);
        g[i] = (x[i] >= 0 ? 1.0 : -1.0) * std::pow(a, p_ - 1.0);
    }
    return Dir(g);
}

double BpBall::curvature(const Vec& x) const {
    if (p_ == 1.0) throw oracle_error("BpBall: curvature undefined for p = 1");
    if (p_ == 2.0) return 1.0;
    bool has_zero = false;
    for (int i = 0; i < n_; ++i)
        if (x[i] == 0.0) has_zero = true;
    if (has_zero) {
        if (p_ < 2.0)
            throw oracle_error("BpBall: curvature undefined at zero coordinate for 1 < p < 2");
        return 0.0;  // p > 2: flat in the missing tangent direction
    }
    double prod = 1.0, sum = 0.0;
    for (int i = 0; i < n_; ++i) {
        double a = std::abs(x[i]);
        prod *= std::pow(a, p_ - 2.0);
        sum += std::pow(a, 2.0 * p_ - 2.0);
    }
    return std::pow(p_ - 1.0, n_ - 1) * prod / std::pow(sum, 0.5 * (n_ + 1));
}

Vec BpBall::support_point(const Dir& u) const {
    if (p_ == 1.0) {
        // cross-polytope: a vertex on the largest coordinate
        int k = 0;
        for (int i = 1; i < n_; ++i)
            if (std::abs(u[i]) > std::abs(u[k])) k = i;
        Vec x(n_);
        x[k] = u[k] >= 0 ? 1.0 : -1.0;
        return x;
    }
    double q = dual_exponent(p_);
    Vec x(n_);
    for (int i = 0; i < n_; ++i) {
        double a = std::abs(u[i]);
        x[i] = (u[i] >= 0 ? 1.0 : -1.0) * std::pow(a, q - 1.0);
    }
    double s = lp_norm(x, p_);
    x *= 1.0 / s;
    return x;
}

std::shared_ptr<const SymmetricBody> BpBall::polar() const {
    if (p_ > 1.0) return std::make_shared<BpBall>(n_, dual_exponent(p_));
    return std::make_shared<PolarView>(std::make_shared<BpBall>(n_, p_));
}

std::string BpBall::describe() const {
    return "B_p ball (n=" + std::to_string(n_) + ", p=" + std::to_string(p_) + ")";
}

// ---------------------------------------------------------------------------
// Ellipsoid
// ---------------------------------------------------------------------------

Ellipsoid::Ellipsoid(const Vec& semi_axes) : axes_(semi_axes) {
    if (axes_.n < 2) throw std::invalid_argument("Ellipsoid: dim out of range");
    double prod = 1.0;
    for (int i = 0; i < axes_.n; ++i) {
        if (!(axes_[i] > 0.0)) throw std::invalid_argument("Ellipsoid: axes must be positive");
        prod *= axes_[i];
    }
    volume_ = prod * euclidean_ball_volume(axes_.n);
}

double Ellipsoid::radial(const Dir& u) const {
    double s = 0.0;
    for (int i = 0; i < axes_.n; ++i) s += u[i] * u[i] / (axes_[i] * axes_[i]);
    return 1.0 / std::sqrt(s);
}

double Ellipsoid::support(const Dir& u) const {
    double s = 0.0;
    for (int i = 0; i < axes_.n; ++i) s += axes_[i] * axes_[i] * u[i] * u[i];
    return std::sqrt(s);
}

Dir Ellipsoid::normal(const Vec& x) const {
    Vec g(axes_.n);
    for (int i = 0; i < axes_.n; ++i) g[i] = x[i] / (axes_[i] * axes_[i]);
    return Dir(g);
}

double Ellipsoid::curvature(const Vec& x) const {
    // kappa = (prod a_i^2)^-1 * (sum x_i^2 / a_i^4)^-(n+1)/2
    int n = axes_.n;
    double q = 0.0, prod = 1.0;
    for (int i = 0; i < n; ++i) {
        double a2 = axes_[i] * axes_[i];
        q += x[i] * x[i] / (a2 * a2);
        prod *= a2;
    }
    return 1.0 / (prod * std::pow(q, 0.5 * (n + 1)));
}

Vec Ellipsoid::support_point(const Dir& u) const {
    double h = support(u);
    Vec x(axes_.n);
    for (int i = 0; i < axes_.n; ++i) x[i] = axes_[i] * axes_[i] * u[i] / h;
    return x;
}

std::shared_ptr<const SymmetricBody> Ellipsoid::polar() const {
    Vec inv(axes_.n);
    for (int i = 0; i < axes_.n; ++i) inv[i] = 1.0 / axes_[i];
    return std::make_shared<Ellipsoid>(inv);
}

std::string Ellipsoid::describe() const {
    std::string s = "ellipsoid (";
    for (int i = 0; i < axes_.n; ++i) s += (i ? "," : "") + std::to_string(axes_[i]);
    return s + ")";
}

// ---------------------------------------------------------------------------
// LinearImageBody
// ---------------------------------------------------------------------------

LinearImageBody::LinearImageBody(const Mat& map, BodyPtr base)
    : map_(map), inv_(map.inverse()), inv_t_(map.inverse().transpose()), base_(std::move(base)) {
    if (map_.n != base_->dim()) throw std::invalid_argument("LinearImageBody: dim mismatch");
}

double LinearImageBody::radial(const Dir& u) const {
    Vec w = inv_.apply(u.v);
    double r = norm2(w);
    return base_->radial(Dir(w)) / r;
}

double LinearImageBody::support(const Dir& u) const {
    Vec w = map_.transpose().apply(u.v);
    double r = norm2(w);
    return r * base_->support(Dir(w));
}

Dir LinearImageBody::normal(const Vec& x) const {
    Dir ub = base_->normal(inv_.apply(x));
    return Dir(inv_t_.apply(ub.v));
}

double LinearImageBody::curvature(const Vec& x) const {
    // kappa transforms so that kappa^{1/(n+1)} / <x,u(x)> picks up det(L)^{-2/(n+1)}
    Vec z = inv_.apply(x);
    double kz = base_->curvature(z);
    double base_cone = dot(z, base_->normal(z).v);
    double cone = dot(x, normal(x).v);
    double d = map_.det();
    int n = dim();
    return kz * std::pow(cone / base_cone, n + 1) / (d * d);
}

Vec LinearImageBody::support_point(const Dir& u) const {
    Vec w = map_.transpose().apply(u.v);
    return map_.apply(base_->support_point(Dir(w)));
}

std::shared_ptr<const SymmetricBody> LinearImageBody::polar() const {
    return std::make_shared<LinearImageBody>(inv_t_, base_->polar());
}

// ---------------------------------------------------------------------------
// PolarView
// ---------------------------------------------------------------------------

PolarView::PolarView(BodyPtr base) : base_(std::move(base)) {}

double PolarView::radial(const Dir& u) const {
    double h = base_->support(u);
    if (!std::isfinite(h) || h <= 0.0)
        throw oracle_error("polar: non-finite support value of base body");
    return 1.0 / h;
}

Vec PolarView::support_point(const Dir& u) const {
    // h_{K°}(u) is attained at the dual point of x = r_K(u) u
    Vec x = base_->boundary_point(u);
    Dir ux = base_->normal(x);
    return (1.0 / dot(x, ux.v)) * ux.v;
}

Dir PolarView::normal(const Vec& y) const {
    Vec x = base_->support_point(Dir(y));
    return Dir(x);
}

double PolarView::curvature(const Vec& y) const {
    // reciprocal identity at dual points <x,y> = 1:
    //   kappa_K(x)^{1/(n+1)} / <x,u_K(x)>  =  [ kappa_{K°}(y)^{1/(n+1)} / <y,u_{K°}(y)> ]^{-1}
    Vec x = base_->support_point(Dir(y));
    double kx = base_->curvature(x);
    if (kx <= 0.0) throw oracle_error("polar curvature: dual point has zero curvature");
    int n = dim();
    double cone_x = dot(x, base_->normal(x).v);
    double cone_y = dot(y, normal(y).v);
    return std::pow(cone_y * cone_x, n + 1) / kx;
}

double PolarView::volume() const {
    std::lock_guard<std::mutex> lock(vol_mutex_);
    if (!volume_) {
        volume_ = star_volume_quadrature([&](const Dir& u) { return radial(u); }, dim(), 1e-11);
    }
    return *volume_;
}

// ---------------------------------------------------------------------------
// star body volume by sphere quadrature
// ---------------------------------------------------------------------------

double star_volume_quadrature(const std::function<double(const Dir&)>& radial, int n,
                              double abs_tol) {
    if (n == 2) {
        auto f = [&](double t) {
            double r = radial(dir2(t));
            return 0.5 * r * r;
        };
        return integrate(f, 0.0, 2.0 * M_PI, abs_tol).value;
    }
    if (n == 3) {
        auto f = [&](double theta) {
            double st = std::sin(theta), ct = std::cos(theta);
            auto g = [&](double phi) {
                Vec v(st * std::cos(phi), st * std::sin(phi), ct);
                double r = radial(Dir(v, false));
                return r * r * r / 3.0;
            };
            return st * integrate_periodic(g, 2.0 * M_PI, abs_tol * 0.1, 32, 1024).value;
        };
        return integrate(f, 0.0, M_PI, abs_tol).value;
    }
    throw oracle_error("star_volume_quadrature: only n = 2,3");
}

}  // namespace dualbody
