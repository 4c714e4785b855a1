#pragma once

#include <stdexcept>
#include <vector>

#include "tcw/intensity.hpp"
#include "tcw/path.hpp"

namespace tcw {

/// Raised when a clock inversion needs a level beyond the clock's range.
/// Recoverable: callers extend the underlying path and retry.
struct horizon_exhausted : std::runtime_error {
    double required_level;
    double available_level;
    horizon_exhausted(double required, double available)
        : std::runtime_error("clock horizon exhausted"),
          required_level(required),
          available_level(available) {}
};

/// A sampled nondecreasing function on [0, horizon], piecewise linear,
/// starting at 0.  Carries the clipping bound used on the integrand during
/// construction (only meaningful for additive functionals).
struct MonotoneClock {
    std::vector<double> times;   // increasing, times[0] = 0
    std::vector<double> values;  // nondecreasing, values[0] = 0
    double integrand_cap = kDefaultCap;

    static constexpr double kDefaultCap = 1e12;

    [[nodiscard]] double horizon() const { return times.back(); }
    [[nodiscard]] double total() const { return values.back(); }

    /// Piecewise-linear value at t in [0, horizon].
    [[nodiscard]] double value_at(double t) const;
};

/// S(t) = integral of min(1/lambda(B_s), cap) ds, trapezoid rule on the
/// path's grid.  The cap bounds the bias from grid points landing near the
/// zero set of lambda; step refinement controls the remainder.
MonotoneClock additive_functional(const SampledPath& path, const IntensityModel& model,
                                  double cap = MonotoneClock::kDefaultCap);

/// Leftmost solution of S(x) = t by linear interpolation; equals the
/// generalized right-inverse inf{x : S(x) > t} for strictly increasing S.
/// Throws horizon_exhausted if t >= S(horizon).
double inverse_clock(const MonotoneClock& S, double t);

/// B read on the inverted clock: B_{tau_t} for each eval time.
/// Interleaved output, eval_times.size() * d values.
std::vector<double> time_changed_path(const SampledPath& path, const MonotoneClock& S,
                                      const std::vector<double>& eval_times);

struct NormalizedResult {
    std::vector<double> points;  // interleaved, eval_times.size() * d
    std::vector<double> nu;      // nu_n(t) = tau_{nt} / n per eval time
    SampledPath path;            // possibly extended
    MonotoneClock clock;
};

inline constexpr int kDefaultExtensionBudget = 40;

/// B_{tau_{nt}} / sqrt(n) and nu_n(t) = tau_{nt}/n per eval time, doubling
/// the path horizon until S exceeds n * max(eval_times).
NormalizedResult normalized_process(SampledPath path, const IntensityModel& model,
                                    double n, const std::vector<double>& eval_times,
                                    double cap = MonotoneClock::kDefaultCap,
                                    int extension_budget = kDefaultExtensionBudget);

/// The limit clock nu(t) = integral of upsilon(W_s) ds, left-point rule:
/// upsilon is piecewise constant in space, so averaging across octant
/// boundaries (trapezoid) would add a bias the formula does not contain.
MonotoneClock limit_clock(const SampledPath& w_path, const IntensityModel& model);

struct LimitResult {
    std::vector<double> points;   // interleaved
    std::vector<double> nu_inv;   // nu^{-1}(t) per eval time
    SampledPath path;
    MonotoneClock clock;
};

/// The limit process W(nu^{-1}(t)), extending W adaptively as needed.
LimitResult limit_process(SampledPath w_path, const IntensityModel& model,
                          const std::vector<double>& eval_times,
                          int extension_budget = kDefaultExtensionBudget);

}  // namespace tcw
