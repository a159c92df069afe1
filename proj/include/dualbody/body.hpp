#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "dualbody/numerics.hpp"
#include "dualbody/vec.hpp"

namespace dualbody {

// Symmetry group of a body beyond central symmetry (which all bodies here
// have).  Tabulations store only a fundamental domain of the group.
enum class Symmetry {
    Central,      // K = -K only
    AxisSigns,    // invariant under all coordinate sign flips
    SignedPerm,   // invariant under signed coordinate permutations (B_p type)
};

// Largest group contained in both.
inline Symmetry common_symmetry(Symmetry a, Symmetry b) {
    auto rank = [](Symmetry s) { return s == Symmetry::Central ? 0 : (s == Symmetry::AxisSigns ? 1 : 2); };
    return rank(a) < rank(b) ? a : b;
}

// Oracle interface for an origin-symmetric convex body: radial and support
// functions, outer normals, Gauss curvature where available, and volume.
// Instances are immutable after construction and safe for concurrent reads.
class SymmetricBody {
  public:
    virtual ~SymmetricBody() = default;

    virtual int dim() const = 0;
    virtual double radial(const Dir& u) const = 0;
    virtual double support(const Dir& u) const = 0;

    // Outer unit normal at a boundary point x.
    virtual Dir normal(const Vec& x) const = 0;

    // Gauss curvature at a boundary point; throws oracle_error when no
    // curvature oracle exists (tabulated bodies) or the point is singular.
    virtual double curvature(const Vec& x) const = 0;
    virtual bool has_curvature() const { return true; }

    virtual double volume() const = 0;

    virtual Symmetry symmetry() const { return Symmetry::Central; }

    // Boundary point attaining the support value in direction u.
    virtual Vec support_point(const Dir& u) const;

    // Closed-form polar when one exists; nullptr means callers should wrap in
    // the generic reciprocal view (use polar_body()).
    virtual std::shared_ptr<const SymmetricBody> polar() const { return nullptr; }

    virtual std::string describe() const { return "body"; }

    Vec boundary_point(const Dir& u) const { return radial(u) * u.v; }

    // Signed membership gap: negative inside, positive outside.
    double membership_gap(const Vec& x) const {
        double r = norm2(x);
        if (r < 1e-300) return -1.0;
        Vec u = x;
        u *= 1.0 / r;
        return r - radial(Dir(u, false));
    }
    bool contains(const Vec& x, double tol = 0.0) const { return membership_gap(x) <= tol; }
};

using BodyPtr = std::shared_ptr<const SymmetricBody>;

// ---------------------------------------------------------------------------
// closed-form volumes
// ---------------------------------------------------------------------------

// |B_2^n|
double euclidean_ball_volume(int n);

// |B_p^n| = 2^n Gamma(1+1/p)^n / Gamma(1+n/p)
double bp_volume(int n, double p);

// l_p norm with overflow-safe scaling; p may be +inf
double lp_norm(const Vec& v, double p);

// Hoelder conjugate: 1/p + 1/p' = 1 (p = 1 maps to +inf)
double dual_exponent(double p);

// ---------------------------------------------------------------------------
// concrete bodies
// ---------------------------------------------------------------------------

// Unit ball of l_p^n.  p >= 1; the curvature and normal oracles need p > 1.
class BpBall : public SymmetricBody {
  public:
    BpBall(int n, double p);

    int dim() const override { return n_; }
    double exponent() const { return p_; }
    double radial(const Dir& u) const override { return 1.0 / lp_norm(u.v, p_); }
    double support(const Dir& u) const override { return lp_norm(u.v, dual_exponent(p_)); }
    Dir normal(const Vec& x) const override;
    double curvature(const Vec& x) const override;
    double volume() const override { return volume_; }
    Symmetry symmetry() const override { return Symmetry::SignedPerm; }
    Vec support_point(const Dir& u) const override;
    std::shared_ptr<const SymmetricBody> polar() const override;
    std::string describe() const override;

  private:
    int n_;
    double p_;
    double volume_;
};

// Axis-aligned ellipsoid sum x_i^2 / a_i^2 <= 1.
class Ellipsoid : public SymmetricBody {
  public:
    explicit Ellipsoid(const Vec& semi_axes);

    int dim() const override { return axes_.n; }
    const Vec& semi_axes() const { return axes_; }
    double radial(const Dir& u) const override;
    double support(const Dir& u) const override;
    Dir normal(const Vec& x) const override;
    double curvature(const Vec& x) const override;
    double volume() const override { return volume_; }
    Symmetry symmetry() const override { return Symmetry::AxisSigns; }
    Vec support_point(const Dir& u) const override;
    std::shared_ptr<const SymmetricBody> polar() const override;
    std::string describe() const override;

  private:
    Vec axes_;
    double volume_;
};

// Image L(K) of a body under an invertible linear map; used for affine
// invariance checks and rotated ellipsoids.
class LinearImageBody : public SymmetricBody {
  public:
    LinearImageBody(const Mat& map, BodyPtr base);

    int dim() const override { return base_->dim(); }
    double radial(const Dir& u) const override;
    double support(const Dir& u) const override;
    Dir normal(const Vec& x) const override;
    double curvature(const Vec& x) const override;
    bool has_curvature() const override { return base_->has_curvature(); }
    double volume() const override { return std::abs(map_.det()) * base_->volume(); }
    Symmetry symmetry() const override { return Symmetry::Central; }
    Vec support_point(const Dir& u) const override;
    std::shared_ptr<const SymmetricBody> polar() const override;
    std::string describe() const override { return "linear image of " + base_->describe(); }
    const Mat& map() const { return map_; }
    BodyPtr base() const { return base_; }

  private:
    Mat map_, inv_, inv_t_;
    BodyPtr base_;
};

// Generic polar body K°: radial = 1/h_K, support = 1/r_K.  The normal and
// curvature oracles go through the dual-point correspondence; curvature uses
// the reciprocal identity at dual points.
class PolarView : public SymmetricBody {
  public:
    explicit PolarView(BodyPtr base);

    int dim() const override { return base_->dim(); }
    double radial(const Dir& u) const override;
    double support(const Dir& u) const override { return 1.0 / base_->radial(u); }
    Dir normal(const Vec& y) const override;
    double curvature(const Vec& y) const override;
    bool has_curvature() const override { return base_->has_curvature(); }
    double volume() const override;
    Symmetry symmetry() const override { return base_->symmetry(); }
    Vec support_point(const Dir& u) const override;
    std::shared_ptr<const SymmetricBody> polar() const override { return base_; }
    std::string describe() const override { return "polar of " + base_->describe(); }

  private:
    BodyPtr base_;
    mutable std::optional<double> volume_;  // lazily computed, then cached
    mutable std::mutex vol_mutex_;
};

// Polar body with the concrete-type shortcuts (B_p -> B_p', ellipsoid axes
// reciprocated, linear images transposed-inverted).
BodyPtr polar_body(const BodyPtr& body);

// Volume of a star body from its radial function, by sphere quadrature
// (n = 2 or 3).
double star_volume_quadrature(const std::function<double(const Dir&)>& radial, int n,
                              double abs_tol);

}  // namespace dualbody
