#include "tcw/sde.hpp"

#include <cmath>

#include "tcw/octant.hpp"

namespace tcw {

namespace {

double sigma_at(const SdeConfig& cfg, std::span<const double> y) {
    if (cfg.kind == DiffusionKind::general)
        return std::sqrt(intensity_at(cfg.model, y));
    // Limit-kind coefficient: sqrt(lambda_alpha) off the boundary, 1 on it.
    if (on_boundary(y)) return 1.0;
    return std::sqrt(cfg.model.limit_at_code(octant_code_of(y)));
}

}  // namespace

SampledPath euler_maruyama(const SdeConfig& config, std::span<const double> start,
                           std::uint64_t master_seed, std::uint64_t path_index) {
    config.model.check();
    require_dimension(config.model.dimension, start.size(), "euler_maruyama");
    const std::size_t d = config.model.dimension;
    TimeGrid grid(config.step, config.horizon);

    const auto stream = rng::Stream::derive(master_seed, path_index, rng::kTagIncrements);
    rng::NormalCursor z(stream);
    const double sd = std::sqrt(grid.step);

    std::vector<double> values(grid.size() * d);
    for (std::size_t c = 0; c < d; ++c) values[c] = start[c];
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        const double* y = values.data() + k * d;
        const double sig = sigma_at(config, {y, d});
        for (std::size_t c = 0; c < d; ++c)
            values[(k + 1) * d + c] = y[c] + sig * sd * z();
    }
    return SampledPath(d, grid, Provenance{master_seed, path_index, 0, 0},
                       std::move(values));
}

std::vector<GeneratorGap> scaled_generator_check(const IntensityModel& model, double n,
                                                 const std::vector<std::vector<double>>& points) {
    if (!(n >= 1.0)) throw config_error("scaled_generator_check: n must be >= 1");
    model.check();
    const double root_n = std::sqrt(n);
    std::vector<GeneratorGap> out;
    out.reserve(points.size());
    for (const auto& x : points) {
        require_dimension(model.dimension, x.size(), "scaled_generator_check");
        std::vector<double> scaled(x.size());
        for (std::size_t c = 0; c < x.size(); ++c) scaled[c] = root_n * x[c];
        GeneratorGap g;
        g.point = x;
        g.lambda_scaled = intensity_at(model, scaled);
        g.lambda_limit = model.limit_at_code(octant_code_of(x));
        g.gap = std::abs(g.lambda_scaled - g.lambda_limit);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace tcw
