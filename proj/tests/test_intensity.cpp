#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "tcw/intensity.hpp"
#include "tcw/octant.hpp"

using namespace tcw;

namespace {

IntensityModel quadrant_model(double l00, double l10, double l01, double l11,
                              ProfileKind profile = ProfileKind::constant) {
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {l00, l10, l01, l11};  // binary-index order
    m.profile = profile;
    m.check();
    return m;
}

}  // namespace

TEST_CASE("octant_of maps quadrants by sign pattern") {
    const std::array<double, 2> q1{1.0, 1.0};
    CHECK(octant_of(q1).code() == 0);  // Q_I
    const std::array<double, 2> q2{-1.0, 2.0};
    CHECK(octant_of(q2).code() == 1);  // Q_II, bit 0 set
    const std::array<double, 3> zero{0.0, 0.0, 0.0};
    CHECK(octant_of(zero).code() == 0);  // zero coordinates count as positive
}

TEST_CASE("octant_of is scale invariant on open octants") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int rep = 0; rep < 200; ++rep) {
        std::array<double, 3> x{u(gen), u(gen), u(gen)};
        bool has_zero = false;
        for (double xi : x) has_zero |= (xi == 0.0);
        if (has_zero) continue;
        const auto a = octant_of(x);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(static_cast<bool>(a.bits[i]) == (x[i] < 0.0));
        for (double t : {0.5, 2.0, 100.0}) {
            std::array<double, 3> tx{t * x[0], t * x[1], t * x[2]};
            CHECK(octant_of(tx) == a);
        }
    }
}

TEST_CASE("intensity_at constant profile") {
    const auto m = uniform_model(3, 1.0);
    const std::array<double, 3> x{0.3, -2.0, 5.0};
    CHECK(intensity_at(m, x) == 1.0);
}

TEST_CASE("intensity_at radial_power closed form") {
    auto m = quadrant_model(4.0, 1.0, 1.0, 1.0, ProfileKind::radial_power);
    m.beta = 1.0;  // allowed under d=2 rule: beta < 1 is required for (vii),
    m.r0 = 1.0;    // not for evaluation itself
    const std::array<double, 2> x{0.5, 0.5};
    CHECK(intensity_at(m, x) == doctest::Approx(4.0 * std::sqrt(0.5)).epsilon(1e-14));
    const std::array<double, 2> origin{0.0, 0.0};
    CHECK(intensity_at(m, origin) == 0.0);
}

TEST_CASE("upsilon ignores the profile and inverts octant limits") {
    auto m = quadrant_model(4.0, 1.0, 1.0, 0.5, ProfileKind::radial_power);
    m.beta = 0.5;
    const std::array<double, 2> a{1.0, 1.0};
    CHECK(upsilon_at(m, a) == doctest::Approx(0.25));
    const std::array<double, 2> b{-1.0, -1.0};
    CHECK(upsilon_at(m, b) == doctest::Approx(2.0));
    const auto id = uniform_model(2, 1.0);
    CHECK(upsilon_at(id, a) == 1.0);
}

TEST_CASE("upsilon times octant limit is exactly one") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::uniform_real_distribution<double> l(0.1, 9.0);
    for (int rep = 0; rep < 100; ++rep) {
        IntensityModel m;
        m.dimension = 3;
        for (int i = 0; i < 8; ++i) m.octant_limits.push_back(l(gen));
        m.check();
        std::array<double, 3> x{u(gen), u(gen), u(gen)};
        CHECK(upsilon_at(m, x) * m.limit_at_code(octant_code_of(x)) ==
              doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("intensity approaches its octant limit along rays") {
    auto m = quadrant_model(4.0, 2.0, 1.0, 0.5, ProfileKind::radial_smooth);
    m.scale = 1.0;
    for (double r : {1e2, 1e4}) {
        const std::array<double, 2> x{r / std::numbers::sqrt2, -r / std::numbers::sqrt2};
        const double limit = m.limit_at_code(octant_code_of(x));
        CHECK(intensity_at(m, x) == doctest::Approx(limit).epsilon(1e-10));
    }
}

TEST_CASE("validate_assumptions constant profile") {
    const auto r = validate_assumptions(quadrant_model(1.0, 4.0, 1.0, 4.0));
    CHECK(r.i == AssumptionStatus::holds);
    CHECK(r.ii == AssumptionStatus::holds);
    CHECK(r.iii == AssumptionStatus::holds);
    CHECK(r.vi == AssumptionStatus::holds);
    CHECK(r.vii == AssumptionStatus::holds);
    CHECK(r.theorem_separated);
    CHECK(r.theorem_radial);
    CHECK(r.theorem_diagonal);
}

TEST_CASE("validate_assumptions radial_power d=3") {
    IntensityModel m;
    m.dimension = 3;
    m.octant_limits.assign(8, 1.0);
    m.profile = ProfileKind::radial_power;
    m.r0 = 1.0;

    m.beta = 1.5;
    auto r = validate_assumptions(m);
    CHECK(r.vii == AssumptionStatus::holds);
    CHECK(r.iii == AssumptionStatus::holds);
    CHECK_FALSE(r.separated_from_zero);
    CHECK_FALSE(r.theorem_separated);
    CHECK(r.theorem_radial);

    m.beta = 2.5;
    r = validate_assumptions(m);
    CHECK(r.vii == AssumptionStatus::fails);
    CHECK_FALSE(r.theorem_radial);
}

TEST_CASE("model validation rejects bad inputs") {
    IntensityModel m;
    m.dimension = 2;
    m.octant_limits = {1.0, 1.0, 1.0};  // wrong count
    CHECK_THROWS_AS(m.check(), config_error);
    m.octant_limits = {1.0, 1.0, 0.0, 1.0};  // non-positive limit
    CHECK_THROWS_AS(m.check(), config_error);

    const auto id = uniform_model(2, 1.0);
    const std::array<double, 3> wrong_dim{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(intensity_at(id, wrong_dim), config_error);
}
