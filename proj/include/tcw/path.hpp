#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tcw/rng.hpp"

namespace tcw {

/// Uniform time grid t_k = k * step, k = 0..n_steps.
struct TimeGrid {
    double step = 0.0;
    std::size_t n_steps = 0;  // number of intervals; grid has n_steps+1 points

    TimeGrid() = default;
    TimeGrid(double step_, double horizon);

    [[nodiscard]] double horizon() const { return step * static_cast<double>(n_steps); }
    [[nodiscard]] std::size_t size() const { return n_steps + 1; }
    [[nodiscard]] double time(std::size_t k) const { return step * static_cast<double>(k); }
};

/// Identifies the random stream of a path: the same provenance always
/// reproduces the same values, bit for bit.
struct Provenance {
    std::uint64_t master_seed = 0;
    std::uint64_t path_index = 0;
    std::uint32_t extension_count = 0;
    std::uint32_t refinement_level = 0;
};

/// A d-dimensional continuous path sampled on a uniform grid, linear
/// interpolation between grid points.  Values are stored interleaved:
/// values[k * d + c] is coordinate c at grid time k.
class SampledPath {
  public:
    SampledPath(std::size_t dimension, TimeGrid grid, Provenance prov,
                std::vector<double> values);

    [[nodiscard]] std::size_t dimension() const { return dim_; }
    [[nodiscard]] const TimeGrid& grid() const { return grid_; }
    [[nodiscard]] const Provenance& provenance() const { return prov_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

    [[nodiscard]] std::span<const double> point(std::size_t k) const {
        return {values_.data() + k * dim_, dim_};
    }

    /// Linear interpolation at time t in [0, horizon].
    void at(double t, std::span<double> out) const;
    [[nodiscard]] std::vector<double> at(double t) const;

  private:
    std::size_t dim_;
    TimeGrid grid_;
    Provenance prov_;
    std::vector<double> values_;
};

/// Wiener path from the origin: independent N(0, step) increments per
/// coordinate, counter-addressed so later horizon extensions reproduce the
/// same values at shared times.
SampledPath sample_wiener(std::size_t dimension, const TimeGrid& grid,
                          std::uint64_t master_seed, std::uint64_t path_index);

/// Refines the grid by `factor`, keeping the original values at retained
/// times and filling interior points with Brownian bridges.
SampledPath refine_bridge(const SampledPath& path, std::size_t factor);

/// Extends the path to new_horizon (rounded up to a whole number of steps)
/// with fresh Wiener increments.  Extending twice equals one long extension.
SampledPath extend_path(const SampledPath& path, double new_horizon);

}  // namespace tcw
