#include "tcw/path.hpp"

#include <cmath>
#include <stdexcept>

#include "tcw/octant.hpp"

namespace tcw {

TimeGrid::TimeGrid(double step_, double horizon) : step(step_) {
    if (!(step > 0.0)) throw config_error("time grid: step must be > 0");
    if (!(horizon >= step)) throw config_error("time grid: horizon must be >= step");
    n_steps = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
}

SampledPath::SampledPath(std::size_t dimension, TimeGrid grid, Provenance prov,
                         std::vector<double> values)
    : dim_(dimension), grid_(grid), prov_(prov), values_(std::move(values)) {
    if (dim_ < 1) throw config_error("sampled path: dimension must be >= 1");
    if (values_.size() != grid_.size() * dim_)
        throw config_error("sampled path: values length does not match grid");
}

void SampledPath::at(double t, std::span<double> out) const {
    require_dimension(dim_, out.size(), "path at");
    if (t <= 0.0) {
        for (std::size_t c = 0; c < dim_; ++c) out[c] = values_[c];
        return;
    }
    const double pos = t / grid_.step;
    std::size_t k = static_cast<std::size_t>(pos);
    if (k >= grid_.n_steps) {
        k = grid_.n_steps;
        for (std::size_t c = 0; c < dim_; ++c) out[c] = values_[k * dim_ + c];
        return;
    }
    const double w = pos - static_cast<double>(k);
    const double* a = values_.data() + k * dim_;
    const double* b = a + dim_;
    for (std::size_t c = 0; c < dim_; ++c) out[c] = a[c] + w * (b[c] - a[c]);
}

std::vector<double> SampledPath::at(double t) const {
    std::vector<double> out(dim_);
    at(t, out);
    return out;
}

SampledPath sample_wiener(std::size_t dimension, const TimeGrid& grid,
                          std::uint64_t master_seed, std::uint64_t path_index) {
    if (dimension < 1) throw config_error("sample_wiener: dimension must be >= 1");
    Provenance prov{master_seed, path_index, 0, 0};
    const auto stream = rng::Stream::derive(master_seed, path_index, rng::kTagIncrements);
    rng::NormalCursor z(stream);
    const double sd = std::sqrt(grid.step);

    std::vector<double> values(grid.size() * dimension, 0.0);
    for (std::size_t k = 0; k < grid.n_steps; ++k)
        for (std::size_t c = 0; c < dimension; ++c)
            values[(k + 1) * dimension + c] = values[k * dimension + c] + sd * z();
    return SampledPath(dimension, grid, prov, std::move(values));
}

SampledPath refine_bridge(const SampledPath& path, std::size_t factor) {
    if (factor < 2) throw config_error("refine_bridge: factor must be >= 2");
    const std::size_t d = path.dimension();
    const TimeGrid& g = path.grid();
    TimeGrid fine;
    fine.step = g.step / static_cast<double>(factor);
    fine.n_steps = g.n_steps * factor;

    Provenance prov = path.provenance();
    const auto stream = rng::Stream::derive(
        prov.master_seed, prov.path_index,
        rng::kTagBridge + prov.refinement_level);
    prov.refinement_level += 1;
    rng::NormalCursor z(stream);

    std::vector<double> values(fine.size() * d);
    const double h = fine.step;
    for (std::size_t k = 0; k < g.n_steps; ++k) {
        const auto a = path.point(k);
        const auto b = path.point(k + 1);
        for (std::size_t c = 0; c < d; ++c) values[(k * factor) * d + c] = a[c];
        // Sequential bridge fill: condition each new point on the previous
        // fine point and the retained right endpoint.
        for (std::size_t j = 1; j < factor; ++j) {
            const double rem = static_cast<double>(factor - (j - 1)) * h;
            const double w = h / rem;
            const double sd = std::sqrt(h * (rem - h) / rem);
            const std::size_t prev = (k * factor + j - 1) * d;
            const std::size_t cur = prev + d;
            for (std::size_t c = 0; c < d; ++c)
                values[cur + c] = values[prev + c] + w * (b[c] - values[prev + c]) + sd * z();
        }
    }
    const auto end = path.point(g.n_steps);
    for (std::size_t c = 0; c < d; ++c) values[fine.n_steps * d + c] = end[c];
    return SampledPath(d, fine, prov, std::move(values));
}

SampledPath extend_path(const SampledPath& path, double new_horizon) {
    const TimeGrid& g = path.grid();
    if (!(new_horizon > g.horizon()))
        throw config_error("extend_path: new horizon must exceed current horizon");
    const std::size_t d = path.dimension();
    TimeGrid longer;
    longer.step = g.step;
    longer.n_steps = static_cast<std::size_t>(std::ceil(new_horizon / g.step - 1e-9));

    Provenance prov = path.provenance();
    const auto stream = rng::Stream::derive(
        prov.master_seed, prov.path_index,
        rng::kTagIncrements + prov.refinement_level);
    prov.extension_count += 1;
    // Counter-addressed increments: the new segment continues the same
    // per-interval indexing, so two extensions equal one long one.
    rng::NormalCursor zi(stream, g.n_steps * d);
    const double sd = std::sqrt(g.step);

    std::vector<double> values(longer.size() * d);
    std::copy(path.values().begin(), path.values().end(), values.begin());
    for (std::size_t k = g.n_steps; k < longer.n_steps; ++k)
        for (std::size_t c = 0; c < d; ++c)
            values[(k + 1) * d + c] = values[k * d + c] + sd * zi();
    return SampledPath(d, longer, prov, std::move(values));
}

}  // namespace tcw
