#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcw/octant.hpp"

namespace tcw {

enum class ProfileKind {
    constant,      // lambda(x) = lambda_octant(x)
    radial_power,  // lambda(x) = lambda_octant(x) * min(1, (|x|/r0)^beta)
    radial_smooth  // lambda(x) = lambda_octant(x) * (1 - exp(-|x|/scale))
};

/// The intensity lambda: octant limit values modulated by an analytic radial
/// profile near the origin.  Restricting lambda to declared analytic families
/// keeps the integrability assumptions decidable in closed form.
struct IntensityModel {
    std::size_t dimension = 1;
    std::vector<double> octant_limits;  // size 2^d, indexed by octant code
    ProfileKind profile = ProfileKind::constant;
    double beta = 0.0;   // radial_power exponent, >= 0
    double r0 = 1.0;     // radial_power cutoff, > 0
    double scale = 1.0;  // radial_smooth decay scale, > 0
    std::optional<double> bounded_above;

    /// Validates field invariants; throws config_error on violation.
    void check() const;

    [[nodiscard]] double limit_at_code(std::uint32_t code) const {
        return octant_limits[code];
    }
    [[nodiscard]] double min_limit() const;
    [[nodiscard]] double max_limit() const;
};

/// Constant-profile model with all octant limits equal.
IntensityModel uniform_model(std::size_t dimension, double lambda);

/// lambda(x).  Strictly positive away from the origin; vanishing profiles
/// return 0 at the origin itself.
double intensity_at(const IntensityModel& model, std::span<const double> x);

/// Occupation intensity upsilon(x) = 1 / lambda_{octant_of(x)}.  Uses the
/// octant limit values only; the local profile does not enter by definition.
double upsilon_at(const IntensityModel& model, std::span<const double> x);

enum class AssumptionStatus { holds, fails, undetermined };

/// Closed-form verdicts for the integrability/limit assumptions, plus which
/// limit theorems they make applicable:
///   (i)   1/lambda locally integrable
///   (ii)  octant limits along min-coordinate -> infinity exist, positive
///   (iii) limsup lambda < infinity
///   (vi)  octant limits along |x| -> infinity exist, positive
///   (vii) the weighted integrability condition near the origin
struct AssumptionReport {
    AssumptionStatus i = AssumptionStatus::undetermined;
    AssumptionStatus ii = AssumptionStatus::undetermined;
    AssumptionStatus iii = AssumptionStatus::undetermined;
    AssumptionStatus vi = AssumptionStatus::undetermined;
    AssumptionStatus vii = AssumptionStatus::undetermined;
    bool separated_from_zero = false;
    bool theorem_separated = false;  // needs (i), (ii), lambda >= c > 0
    bool theorem_radial = false;     // needs (i), (vi), (vii)
    bool theorem_diagonal = false;   // needs (i), (ii), (iii), (vii)

    [[nodiscard]] std::string summary() const;
};

AssumptionReport validate_assumptions(const IntensityModel& model);

const char* to_string(AssumptionStatus s);

}  // namespace tcw
