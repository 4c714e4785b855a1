#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "tcw/clock.hpp"
#include "tcw/sde.hpp"
#include "tcw/stats.hpp"

using namespace tcw;

namespace {
constexpr std::uint64_t kSeed = 77;

double terminal_variance(const SdeConfig& cfg, const std::vector<double>& start,
                         std::size_t paths, std::size_t coord = 0) {
    double var = 0.0;
    for (std::size_t i = 0; i < paths; ++i) {
        const auto p = euler_maruyama(cfg, start, kSeed, i);
        const double v = p.point(p.grid().n_steps)[coord] - start[coord];
        var += v * v;
    }
    return var / static_cast<double>(paths);
}
}  // namespace

TEST_CASE("euler step matches the closed form for one step") {
    SdeConfig cfg;
    cfg.model = uniform_model(1, 4.0);
    cfg.step = 1.0;
    cfg.horizon = 1.0;
    const std::vector<double> start = {3.0};
    const auto p = euler_maruyama(cfg, start, kSeed, 0);

    const auto stream = rng::Stream::derive(kSeed, 0, rng::kTagIncrements);
    const double z0 = stream.normal(0);
    CHECK(p.point(0)[0] == 3.0);
    CHECK(p.point(1)[0] == doctest::Approx(3.0 + 2.0 * z0).epsilon(1e-14));
}

TEST_CASE("unit intensity reproduces the driving noise scale") {
    SdeConfig cfg;
    cfg.model = uniform_model(1, 1.0);
    cfg.step = 0.01;
    cfg.horizon = 1.0;
    const double var = terminal_variance(cfg, {0.0}, 10000);
    CHECK(var == doctest::Approx(1.0).epsilon(3.0 * std::sqrt(2.0 / 10000.0)));
}

TEST_CASE("uniform limits c give terminal variance c * t") {
    SdeConfig cfg;
    cfg.model = uniform_model(2, 2.0);
    cfg.kind = DiffusionKind::limit;
    cfg.step = 0.01;
    cfg.horizon = 1.0;
    // start away from the axes so the boundary rule never fires at step 0
    const double var = terminal_variance(cfg, {5.0, 5.0}, 10000, 1);
    CHECK(var == doctest::Approx(2.0).epsilon(3.0 * std::sqrt(2.0 / 10000.0) + 0.05));
}

TEST_CASE("limit diffusion marginal matches the time-changed construction") {
    // lambda = c everywhere: both constructions are exactly B_{ct} in law.
    const double c = 4.0;
    const std::size_t n = 4000;
    std::vector<double> sde_side(n), tc_side(n);
    SdeConfig cfg;
    cfg.model = uniform_model(1, c);
    cfg.kind = DiffusionKind::limit;
    cfg.step = 0.01;
    cfg.horizon = 1.0;
    const std::vector<double> evals = {1.0};
    for (std::size_t i = 0; i < n; ++i) {
        sde_side[i] = euler_maruyama(cfg, std::array<double, 1>{0.0}, kSeed, i)
                          .point(100)[0];
        auto w = sample_wiener(1, TimeGrid(0.01, 8.0), kSeed + 1, i);
        tc_side[i] = limit_process(std::move(w), cfg.model, evals).points[0];
    }
    const auto r = ks_two_sample(EmpiricalDistribution(sde_side),
                                 EmpiricalDistribution(tc_side));
    CHECK(r.value < 3.0 * r.se);
}

TEST_CASE("increments are centered and uncorrelated with the state") {
    SdeConfig cfg;
    cfg.model.dimension = 1;
    cfg.model.octant_limits = {1.0, 4.0};
    cfg.model.check();
    cfg.kind = DiffusionKind::limit;
    cfg.step = 0.05;
    cfg.horizon = 2.0;
    const std::size_t n = 10000;
    std::vector<double> final_mean(n);
    for (std::size_t i = 0; i < n; ++i)
        final_mean[i] = euler_maruyama(cfg, std::array<double, 1>{0.0}, kSeed, i)
                            .point(40)[0];
    const auto m = mc_mean(final_mean);
    CHECK(std::abs(m.mean) < 3.0 * m.se);
}

TEST_CASE("scaled generator gap vanishes for constant profiles") {
    const auto gaps = scaled_generator_check(
        uniform_model(2, 3.0), 100.0, {{0.5, 0.5}, {-1.0, 2.0}, {-0.1, -0.1}});
    for (const auto& g : gaps) {
        CHECK(g.lambda_limit == 3.0);
        CHECK(g.gap == 0.0);
    }
}

TEST_CASE("scaled generator gap decays in n for radial profiles") {
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {2.0, 2.0, 2.0, 2.0};
    m.profile = ProfileKind::radial_smooth;
    m.scale = 1.0;
    m.check();
    const std::vector<std::vector<double>> pts = {{1.0, 1.0}, {-0.5, 0.25}};
    const auto coarse = scaled_generator_check(m, 4.0, pts);
    const auto fine = scaled_generator_check(m, 1e6, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(fine[i].gap < coarse[i].gap);
        CHECK(fine[i].gap < 1e-12);
        CHECK(coarse[i].lambda_limit == 2.0);
    }
    // at n=1 the gap is just |lambda(x) - lambda_alpha|
    const auto base = scaled_generator_check(m, 1.0, {{3.0, 4.0}});
    CHECK(base[0].lambda_scaled == doctest::Approx(2.0 * (1.0 - std::exp(-5.0))));
}

TEST_CASE("euler rejects dimension mismatches") {
    SdeConfig cfg;
    cfg.model = uniform_model(2, 1.0);
    const std::vector<double> start = {0.0};
    CHECK_THROWS_AS(euler_maruyama(cfg, start, kSeed, 0), config_error);
}
