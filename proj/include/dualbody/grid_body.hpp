#pragma once

#include <functional>
#include <string>

#include "dualbody/grid.hpp"

namespace dualbody {

// Convex body carried by tabulated radial samples on a direction grid.  This
// is the output form of the floating / illumination / polar constructions.
// No curvature oracle: second derivatives of interpolated grids are too noisy
// for the affine invariant.
class RadialGridBody : public SymmetricBody {
  public:
    RadialGridBody(DirectionGrid grid, std::vector<double> radial_values, std::string label);

    // Tabulates fn on the grid; the declared tolerance is measured on off-grid
    // probe directions against fn itself.
    static std::shared_ptr<RadialGridBody> from_radial_fn(
        const std::function<double(const Dir&)>& fn, DirectionGrid grid, std::string label);

    int dim() const override { return table_.grid().dim(); }
    double radial(const Dir& u) const override { return table_.value(u); }
    double support(const Dir& u) const override;
    Dir normal(const Vec& x) const override;
    double curvature(const Vec& x) const override;
    bool has_curvature() const override { return false; }
    double volume() const override { return volume_; }
    double volume_error_bound() const { return volume_error_; }
    Symmetry symmetry() const override { return table_.grid().symmetry(); }
    std::shared_ptr<const SymmetricBody> polar() const override;
    std::string describe() const override { return label_; }

    const DirectionalTable& table() const { return table_; }
    const DirectionGrid& grid() const { return table_.grid(); }

    double grid_tolerance() const { return grid_tolerance_; }
    void set_grid_tolerance(double t) { grid_tolerance_ = t; }

    // Largest amount by which any sampled boundary point violates a sampled
    // supporting halfspace; <= grid tolerance for a convex tabulation.
    double max_convexity_violation(int probe_count = 256) const;

  private:
    void compute_volume();

    DirectionalTable table_;
    std::string label_;
    double grid_tolerance_ = 0.0;
    double volume_ = 0.0;
    double volume_error_ = 0.0;
};

}  // namespace dualbody
