#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualbody {

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct oracle_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature or estimator failed to reach the requested tolerance; carries the
// bound that was achieved.
struct accuracy_error : std::runtime_error {
    double achieved;
    accuracy_error(const std::string& msg, double got)
        : std::runtime_error(msg + " (achieved " + std::to_string(got) + ")"), achieved(got) {}
};

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

struct RootResult {
    double x = 0.0;
    double f = 0.0;
    int iterations = 0;
};

// Safeguarded Brent root finder on a sign-changing bracket [a, b].
RootResult brent_root(const std::function<double(double)>& f, double a, double b,
                      double xtol, double ftol = 0.0, int max_iter = 200);

// Expands [a, b] geometrically to the right until f changes sign, then solves.
// Used where only a lower endpoint is known (e.g. illumination apex search).
RootResult brent_root_expanding(const std::function<double(double)>& f, double a,
                                double first_step, double hard_limit, double xtol,
                                double ftol = 0.0);

// ---------------------------------------------------------------------------
// Minimization
// ---------------------------------------------------------------------------

struct MinResult {
    double x = 0.0;
    double f = 0.0;
    int iterations = 0;
};

// Golden-section descent on [a, b]; assumes unimodality on the bracket.
MinResult golden_minimize(const std::function<double(double)>& f, double a, double b,
                          double xtol, int max_iter = 200);

// Nelder--Mead on R^2, used for refinement in a tangent chart of S^2.
struct Min2Result {
    double x = 0.0, y = 0.0, f = 0.0;
    int iterations = 0;
};
Min2Result nelder_mead_2d(const std::function<double(double, double)>& f, double x0, double y0,
                          double scale, double ftol, int max_iter = 300);

// ---------------------------------------------------------------------------
// Adaptive quadrature (Gauss-Kronrod 7-15)
// ---------------------------------------------------------------------------

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // conservative bound from the adaptive refinement
    int evaluations = 0;
};

// Integrates f over [a, b] to absolute tolerance abs_tol (plus rel_tol * |I|).
// Throws accuracy_error when the interval stack is exhausted above tolerance.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol = 1e-14, int max_depth = 48);

// Same, but splits the domain at the given interior breakpoints first.
QuadResult integrate_split(const std::function<double(double)>& f, double a, double b,
                           const std::vector<double>& breakpoints, double abs_tol,
                           double rel_tol = 1e-14);

// Periodic trapezoid rule with doubling, for smooth integrands over [0, 2*pi).
// Spectrally accurate for smooth periodic integrands.
QuadResult integrate_periodic(const std::function<double(double)>& f, double period,
                              double abs_tol, int min_points = 32, int max_points = 4096);

// ---------------------------------------------------------------------------
// Power-law extrapolation: fit y = a + b * x^c with c in [c_lo, c_hi]
// ---------------------------------------------------------------------------

struct PowerFit {
    double a = 0.0;       // extrapolated limit as x -> 0
    double b = 0.0;
    double c = 1.0;       // fitted correction exponent
    double rms_residual = 0.0;
    double uncertainty = 0.0;  // half-width from leave-one-out refits
};

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                       double c_lo = 0.1, double c_hi = 2.0);

// ---------------------------------------------------------------------------
// Counter-based RNG (splitmix64 over a seed/counter pair): deterministic,
// shardable, no sequential state.
// ---------------------------------------------------------------------------

inline uint64_t splitmix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct CounterRng {
    uint64_t key;
    explicit CounterRng(uint64_t seed) : key(splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

    uint64_t bits(uint64_t counter) const { return splitmix64(key ^ splitmix64(counter)); }

    // uniform in [0, 1)
    double uniform(uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    CounterRng derive(uint64_t stream) const {
        CounterRng r(0);
        r.key = splitmix64(key ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1));
        return r;
    }
};

// ---------------------------------------------------------------------------
// Worker pool size used by direction-parallel loops
// ---------------------------------------------------------------------------

void set_worker_count(int k);
int worker_count();

// Runs fn(i) for i in [0, count) on the worker pool. Results must be written to
// preallocated slots indexed by i, so the outcome is thread-count independent.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace dualbody
