#pragma once

#include <functional>

#include "dualbody/body.hpp"

namespace dualbody {

// Slab {xi in K : <xi, u> >= h_K(u) - height} cut off orthogonally to u.
struct CapSpec {
    Dir direction;
    double height = 0.0;  // 0 <= height <= 2 h_K(u)
};

struct MeasureTolerances {
    double quad_abs_n2 = 1e-12;   // absolute quadrature tolerance, n = 2
    double quad_abs_n3 = 1e-9;    // absolute quadrature tolerance, n = 3
    double chord_tol = 1e-13;     // root tolerance for chord endpoints
};

MeasureTolerances& default_measure_tolerances();

// |K|_n; closed form when the body has one, otherwise sphere quadrature of
// r(u)^n / n.
double volume(const SymmetricBody& body);

// Volume of the cap; 1-D chord quadrature for n = 2, section-area quadrature
// for n = 3.  Monotone nondecreasing in the height.
double cap_volume(const SymmetricBody& body, const CapSpec& cap,
                  const MeasureTolerances& tol = default_measure_tolerances());

// Barycenter of the (n-1)-dimensional section K cap {<xi,u> = h - height}.
Vec section_barycenter(const SymmetricBody& body, const CapSpec& cap,
                       const MeasureTolerances& tol = default_measure_tolerances());

// |conv[K, x]|_n for x strictly outside K, via the boundary integral
//   |conv[K,x]| = 1/2 (|K| + 1/n Int_{dK} |<x - y, u(y)>| dmu(y)),
// with the integrand split at the tangency locus before quadrature.
double hull_point_volume(const SymmetricBody& body, const Vec& x,
                         const MeasureTolerances& tol = default_measure_tolerances());

// Same, but |K| is passed in (callers that difference hull volumes against a
// known body volume avoid re-deriving it).
double hull_point_volume_with(const SymmetricBody& body, const Vec& x, double body_volume,
                              const MeasureTolerances& tol = default_measure_tolerances());

// Monte Carlo rejection-sampling volume oracle.
struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
    long hits = 0;
    long samples = 0;
};

// Unbiased estimate of the measure of {x in box : inside(x)}.  Deterministic
// for a fixed (seed, shard count) pair; shards run in parallel with derived
// per-shard seeds.
McResult mc_volume(const std::function<bool(const Vec&)>& inside, const Vec& box_lo,
                   const Vec& box_hi, long samples, uint64_t seed, int shards = 0);

// Convenience wrapper sampling the body's bounding box.
McResult mc_body_volume(const SymmetricBody& body, long samples, uint64_t seed);

}  // namespace dualbody
