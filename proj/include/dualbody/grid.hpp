#pragma once

#include <vector>

#include "dualbody/body.hpp"
#include "dualbody/vec.hpp"

namespace dualbody {

// Folds a direction into the fundamental domain of the symmetry group.
Vec canonicalize(const Vec& v, Symmetry sym);
double fold_angle(double theta, Symmetry sym);  // n = 2, returns t in [0, 2*pi/m]

// Deterministic direction grid used for all tabulations.
//   n = 2: uniform angles, full_size divisible by 8, symmetry-reduced to an
//          arc ([0,pi) central, [0,pi/2] quadrant, [0,pi/4] octant).
//   n = 3: Fibonacci hemisphere of full_size/2 points plus exact antipodes;
//          the canonical set is the subset lying in the fundamental domain,
//          and its group orbit is used for neighbor searches.
class DirectionGrid {
  public:
    static DirectionGrid make(int n, int full_size, Symmetry sym);
    static DirectionGrid for_body(const SymmetricBody& body, int full_size);

    int dim() const { return n_; }
    int full_size() const { return full_size_; }
    Symmetry symmetry() const { return sym_; }

    // canonical representatives (one value slot per entry in tabulations)
    const std::vector<Vec>& canonical() const { return canonical_; }
    int canonical_count() const { return static_cast<int>(canonical_.size()); }
    double canonical_angle(int k) const { return angle_step_ * k; }  // n = 2
    double angle_step() const { return angle_step_; }                // n = 2

    // full direction set (orbit of the canonical set)
    const std::vector<Vec>& expanded() const { return expanded_; }
    const std::vector<int>& expanded_source() const { return expanded_source_; }

    // mean angular spacing between neighboring grid points
    double spacing() const;

  private:
    int n_ = 2;
    int full_size_ = 0;
    Symmetry sym_ = Symmetry::Central;
    double angle_step_ = 0.0;             // n = 2
    std::vector<Vec> canonical_;
    std::vector<Vec> expanded_;           // group orbit of canonical_
    std::vector<int> expanded_source_;    // canonical index of each expanded point
};

// Scalar samples on the canonical directions of a grid, queried anywhere on
// the sphere through symmetric interpolation: 4-point cubic in angle for
// n = 2, barycentric over the three nearest orbit points (inverse-distance
// fallback) for n = 3.
class DirectionalTable {
  public:
    DirectionalTable(DirectionGrid grid, std::vector<double> values);

    const DirectionGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

    double value(const Dir& v) const;
    double value_at_angle(double theta) const;       // n = 2
    double derivative_at_angle(double theta) const;  // n = 2, d(value)/d(theta)

    // rough interpolation-error scale from divided differences of the samples
    double error_estimate() const;

  private:
    double interp_folded(double t, bool derivative) const;
    double sample_folded(long idx) const;  // index with wrap/reflection

    DirectionGrid grid_;
    std::vector<double> values_;

    // n = 3 neighbor lookup: lat/lon buckets over the expanded orbit
    void build_buckets();
    std::vector<int> neighbors(const Vec& q, int want) const;
    int nb_theta_ = 0, nb_phi_ = 0;
    std::vector<std::vector<int>> buckets_;
};

}  // namespace dualbody
