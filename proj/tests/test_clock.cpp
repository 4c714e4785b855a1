#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tcw/clock.hpp"
#include "tcw/stats.hpp"

using namespace tcw;

namespace {
constexpr std::uint64_t kSeed = 424242;

// Brute-force inversion oracle: scan a dense grid for the first crossing.
double brute_force_inverse(const MonotoneClock& S, double t, double dt) {
    for (double x = 0.0; x <= S.horizon() + dt; x += dt)
        if (S.value_at(x) >= t) return x;
    return S.horizon();
}
}  // namespace

TEST_CASE("additive functional is exact for constant intensity") {
    const TimeGrid grid(0.1, 5.0);
    const auto p = sample_wiener(2, grid, kSeed, 0);
    const auto s1 = additive_functional(p, uniform_model(2, 1.0));
    const auto s2 = additive_functional(p, uniform_model(2, 2.0));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(s1.values[k] == doctest::Approx(grid.time(k)).epsilon(1e-12));
        CHECK(s2.values[k] == doctest::Approx(grid.time(k) / 2.0).epsilon(1e-12));
    }
    CHECK(s1.values[0] == 0.0);
}

TEST_CASE("additive functional self-converges under step halving") {
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {1.0, 4.0, 1.0, 4.0};
    m.profile = ProfileKind::radial_power;
    m.beta = 0.5;
    m.r0 = 1.0;
    m.check();

    // Per path the totals fluctuate (each bridge level adds fresh
    // randomness), so compare the mean refinement gap early vs late.
    double early = 0.0, late = 0.0;
    const int paths = 100;
    for (int p = 0; p < paths; ++p) {
        auto path = sample_wiener(2, TimeGrid(0.04, 1.0), kSeed, static_cast<std::uint64_t>(p));
        std::vector<double> s;
        for (int level = 0; level < 5; ++level) {
            s.push_back(additive_functional(path, m).total());
            if (level < 4) path = refine_bridge(path, 2);
        }
        early += std::abs(s[1] - s[0]);
        late += std::abs(s[4] - s[3]);
    }
    CHECK(late < early);
}

TEST_CASE("cap monotonicity: larger cap never decreases S") {
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {1.0, 2.0, 3.0, 4.0};
    m.profile = ProfileKind::radial_power;
    m.beta = 0.9;
    m.check();
    const auto p = sample_wiener(2, TimeGrid(0.01, 1.0), kSeed, 7);
    const auto lo = additive_functional(p, m, 10.0);
    const auto hi = additive_functional(p, m, 1e6);
    for (std::size_t k = 0; k < lo.values.size(); ++k)
        CHECK(hi.values[k] >= lo.values[k]);
    CHECK_THROWS_AS(additive_functional(p, m, -1.0), config_error);
}

TEST_CASE("inverse of the identity clock") {
    const auto p = sample_wiener(1, TimeGrid(0.125, 2.0), kSeed, 0);
    const auto s = additive_functional(p, uniform_model(1, 1.0));
    CHECK(inverse_clock(s, 0.7) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(inverse_clock(s, 0.0) == 0.0);
}

TEST_CASE("inverse on a piecewise clock matches the hand computation") {
    MonotoneClock s;
    s.times = {0.0, 1.0, 2.0};
    s.values = {0.0, 2.0, 2.5};  // slope 2 then 0.5
    CHECK(inverse_clock(s, 2.25) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(inverse_clock(s, 2.25) ==
          doctest::Approx(brute_force_inverse(s, 2.25, 1e-5)).epsilon(1e-4));
    CHECK_THROWS_AS(inverse_clock(s, 2.5), horizon_exhausted);
    CHECK_THROWS_AS(inverse_clock(s, 99.0), horizon_exhausted);
}

TEST_CASE("inverse vs dense brute force on random clocks") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> slope(0.05, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        MonotoneClock s;
        s.times = {0.0};
        s.values = {0.0};
        for (int k = 0; k < 40; ++k) {
            s.times.push_back(s.times.back() + 0.1);
            s.values.push_back(s.values.back() + slope(gen) * 0.1);
        }
        std::uniform_real_distribution<double> level(0.0, s.total() * 0.999);
        const double t = level(gen);
        const double fine = 1e-4;
        const double x = inverse_clock(s, t);
        CHECK(std::abs(x - brute_force_inverse(s, t, fine)) <= fine + 1e-9);
        // round trip within floating point
        CHECK(std::abs(s.value_at(x) - t) <= 1e-12 * std::max(1.0, t));
    }
}

TEST_CASE("inverse is monotone in the level") {
    const auto p = sample_wiener(2, TimeGrid(0.01, 2.0), kSeed, 11);
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {1.0, 4.0, 0.5, 2.0};
    m.check();
    const auto s = additive_functional(p, m);
    double prev = 0.0;
    for (double t = 0.0; t < s.total(); t += s.total() / 64.0) {
        const double x = inverse_clock(s, t);
        CHECK(x >= prev);
        prev = x;
    }
}

TEST_CASE("time-changed path under constant intensity") {
    const auto p = sample_wiener(2, TimeGrid(0.01, 1.0), kSeed, 2);
    const auto s = additive_functional(p, uniform_model(2, 1.0));
    const std::vector<double> evals = {0.0, 0.25, 0.5, 0.9};
    const auto pts = time_changed_path(p, s, evals);
    CHECK(pts[0] == 0.0);
    CHECK(pts[1] == 0.0);
    for (std::size_t i = 0; i < evals.size(); ++i) {
        const auto direct = p.at(evals[i]);
        CHECK(pts[i * 2 + 0] == doctest::Approx(direct[0]).epsilon(1e-12));
        CHECK(pts[i * 2 + 1] == doctest::Approx(direct[1]).epsilon(1e-12));
    }
}

TEST_CASE("lambda=4 clock runs the path four times faster") {
    const std::size_t n = 10000;
    std::vector<double> at1(n);
    const std::vector<double> evals = {1.0};
    for (std::size_t i = 0; i < n; ++i) {
        auto p = sample_wiener(1, TimeGrid(0.05, 4.5), kSeed, i);
        const auto s = additive_functional(p, uniform_model(1, 4.0));
        at1[i] = time_changed_path(p, s, evals)[0];
    }
    double var = 0.0;
    for (double v : at1) var += v * v;
    var /= static_cast<double>(n);
    CHECK(var == doctest::Approx(4.0).epsilon(3.0 * std::sqrt(2.0 / static_cast<double>(n))));
}

TEST_CASE("normalized process identities") {
    const std::vector<double> evals = {0.5, 1.0};
    auto p = sample_wiener(2, TimeGrid(0.01, 1.0), kSeed, 4);
    const auto keep = p;

    // n=1, lambda=1: the process itself.
    auto res = normalized_process(std::move(p), uniform_model(2, 1.0), 1.0, evals);
    for (std::size_t i = 0; i < evals.size(); ++i) {
        const auto direct = keep.at(evals[i]);
        CHECK(res.points[i * 2] == doctest::Approx(direct[0]).epsilon(1e-12));
        CHECK(res.nu[i] == doctest::Approx(evals[i]).epsilon(1e-12));
    }

    // lambda = c: tau_{nt}/n = c t exactly, any n.
    for (double c : {0.5, 2.0, 4.0}) {
        auto q = sample_wiener(2, TimeGrid(0.01, 1.0), kSeed, 5);
        auto r = normalized_process(std::move(q), uniform_model(2, c), 16.0, evals);
        for (std::size_t i = 0; i < evals.size(); ++i)
            CHECK(r.nu[i] == doctest::Approx(c * evals[i]).epsilon(1e-12));
        CHECK(r.clock.total() > 16.0 * evals.back());  // extension soundness
    }
}

TEST_CASE("normalized marginal is standard gaussian for lambda=1") {
    const std::size_t n = 10000;
    const std::vector<double> evals = {1.0};
    std::vector<double> at1(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto p = sample_wiener(1, TimeGrid(0.02, 2.0), kSeed + 1, i);
        at1[i] = normalized_process(std::move(p), uniform_model(1, 1.0), 25.0, evals).points[0];
    }
    const auto r = ks_one_sample(EmpiricalDistribution(at1), normal_cdf);
    CHECK(r.value < 0.02);
}

TEST_CASE("extension budget turns exhaustion into a hard error") {
    auto p = sample_wiener(1, TimeGrid(0.1, 1.0), kSeed, 6);
    CHECK_THROWS_AS(
        normalized_process(std::move(p), uniform_model(1, 1.0), 1.0, {1e9},
                           MonotoneClock::kDefaultCap, 3),
        config_error);
}

TEST_CASE("limit clock: identity and piecewise constant cases") {
    const auto w = sample_wiener(2, TimeGrid(0.01, 2.0), kSeed, 8);
    const auto nu = limit_clock(w, uniform_model(2, 1.0));
    for (std::size_t k = 0; k < nu.times.size(); ++k)
        CHECK(nu.values[k] == doctest::Approx(nu.times[k]).epsilon(1e-12));

    // deterministic path: in octant 0 on [0,1], then octant (1,0) on [1,2]
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {1.0, 4.0, 1.0, 1.0};
    m.check();
    const TimeGrid grid(0.25, 2.0);
    std::vector<double> vals;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        vals.push_back(t < 1.0 ? 1.0 : -1.0);  // x coordinate flips sign at t=1
        vals.push_back(1.0);
    }
    SampledPath det(2, grid, Provenance{}, std::move(vals));
    const auto nu2 = limit_clock(det, m);
    CHECK(nu2.total() == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("limit clock slope bounds hold on random paths") {
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {0.5, 4.0, 1.0, 2.0};
    m.check();
    const double lo = 1.0 / m.max_limit();
    const double hi = 1.0 / m.min_limit();
    for (std::size_t i = 0; i < 1000; ++i) {
        const auto w = sample_wiener(2, TimeGrid(0.05, 1.0), kSeed + 2, i);
        const auto nu = limit_clock(w, m);
        for (std::size_t k = 1; k < nu.times.size(); ++k) {
            const double t = nu.times[k];
            CHECK(nu.values[k] >= lo * t - 1e-12);
            CHECK(nu.values[k] <= hi * t + 1e-12);
        }
    }
}

TEST_CASE("limit process identities") {
    const std::vector<double> evals = {0.0, 0.5, 1.0};
    auto w = sample_wiener(2, TimeGrid(0.01, 2.0), kSeed, 12);
    const auto keep = w;
    auto res = limit_process(std::move(w), uniform_model(2, 1.0), evals);
    CHECK(res.points[0] == 0.0);
    CHECK(res.points[1] == 0.0);
    for (std::size_t i = 0; i < evals.size(); ++i) {
        const auto direct = keep.at(evals[i]);
        CHECK(res.points[i * 2] == doctest::Approx(direct[0]).epsilon(1e-12));
    }
}

TEST_CASE("limit process with equal limits c scales time by c") {
    const std::size_t n = 10000;
    const std::vector<double> evals = {1.0};
    const double c = 2.0;
    std::vector<double> at1(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto w = sample_wiener(1, TimeGrid(0.02, 2.5), kSeed + 3, i);
        at1[i] = limit_process(std::move(w), uniform_model(1, c), evals).points[0];
    }
    double var = 0.0;
    for (double v : at1) var += v * v;
    var /= static_cast<double>(n);
    CHECK(var == doctest::Approx(c).epsilon(3.0 * std::sqrt(2.0 / static_cast<double>(n))));
}
