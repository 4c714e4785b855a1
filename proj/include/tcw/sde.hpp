#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tcw/intensity.hpp"
#include "tcw/path.hpp"

namespace tcw {

enum class DiffusionKind {
    general,  // sigma(x) = sqrt(lambda(x)), full intensity with profile
    limit     // sigma(x) = sqrt(lambda_octant(x)), sigma = 1 on boundary planes
};

struct SdeConfig {
    IntensityModel model;
    DiffusionKind kind = DiffusionKind::general;
    double step = 1e-3;
    double horizon = 1.0;
};

/// Euler scheme Y_{k+1} = Y_k + sigma(Y_k) * dB_k with scalar sigma applied
/// to every coordinate of the d-dimensional driving increment.
SampledPath euler_maruyama(const SdeConfig& config, std::span<const double> start,
                           std::uint64_t master_seed, std::uint64_t path_index);

struct GeneratorGap {
    std::vector<double> point;
    double lambda_scaled;  // lambda(x * sqrt(n))
    double lambda_limit;   // sum over octants of lambda_alpha * 1_{Delta_alpha}(x)
    double gap;            // |scaled - limit|
};

/// Pointwise comparison of the scaled intensity lambda(x sqrt(n)) with its
/// octant-limit value, per test point off the boundary hyperplanes.
std::vector<GeneratorGap> scaled_generator_check(const IntensityModel& model, double n,
                                                 const std::vector<std::vector<double>>& points);

}  // namespace tcw
