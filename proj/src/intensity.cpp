#include "tcw/intensity.hpp"

#include <cmath>
#include <sstream>

namespace tcw {

void IntensityModel::check() const {
    if (dimension < 1) throw config_error("intensity model: dimension must be >= 1");
    if (dimension > 20) throw config_error("intensity model: dimension too large");
    const std::size_t want = std::size_t{1} << dimension;
    if (octant_limits.size() != want) {
        std::ostringstream os;
        os << "intensity model: octant_limits needs " << want
           << " entries for dimension " << dimension << ", got " << octant_limits.size();
        throw config_error(os.str());
    }
    for (double l : octant_limits)
        if (!(l > 0.0)) throw config_error("intensity model: every octant limit must be > 0");
    if (profile == ProfileKind::radial_power) {
        if (beta < 0.0) throw config_error("intensity model: beta must be >= 0");
        if (!(r0 > 0.0)) throw config_error("intensity model: r0 must be > 0");
    }
    if (profile == ProfileKind::radial_smooth && !(scale > 0.0))
        throw config_error("intensity model: scale must be > 0");
}

double IntensityModel::min_limit() const {
    double m = octant_limits[0];
    for (double l : octant_limits) m = std::min(m, l);
    return m;
}

double IntensityModel::max_limit() const {
    double m = octant_limits[0];
    for (double l : octant_limits) m = std::max(m, l);
    return m;
}

IntensityModel uniform_model(std::size_t dimension, double lambda) {
    IntensityModel m;
    m.dimension = dimension;
    m.octant_limits.assign(std::size_t{1} << dimension, lambda);
    m.check();
    return m;
}

namespace {

double profile_factor(const IntensityModel& m, double r) {
    switch (m.profile) {
        case ProfileKind::constant:
            return 1.0;
        case ProfileKind::radial_power:
            if (m.beta == 0.0) return 1.0;
            return r >= m.r0 ? 1.0 : std::pow(r / m.r0, m.beta);
        case ProfileKind::radial_smooth:
            return -std::expm1(-r / m.scale);
    }
    return 1.0;
}

}  // namespace

double intensity_at(const IntensityModel& model, std::span<const double> x) {
    require_dimension(model.dimension, x.size(), "intensity_at");
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    return model.limit_at_code(octant_code_of(x)) * profile_factor(model, std::sqrt(r2));
}

double upsilon_at(const IntensityModel& model, std::span<const double> x) {
    require_dimension(model.dimension, x.size(), "upsilon_at");
    return 1.0 / model.limit_at_code(octant_code_of(x));
}

AssumptionReport validate_assumptions(const IntensityModel& model) {
    model.check();
    AssumptionReport r;
    const std::size_t d = model.dimension;

    // The built-in families all converge to the octant limits both radially
    // and along min-coordinate rays, so (ii) and (vi) coincide here.
    r.ii = AssumptionStatus::holds;
    r.vi = AssumptionStatus::holds;
    // lambda <= max octant limit for every family.
    r.iii = AssumptionStatus::holds;

    switch (model.profile) {
        case ProfileKind::constant:
            r.i = AssumptionStatus::holds;
            r.vii = AssumptionStatus::holds;
            r.separated_from_zero = true;
            break;
        case ProfileKind::radial_power: {
            const double beta = model.beta;
            // 1/lambda ~ r^-beta near 0: locally integrable iff beta < d.
            r.i = beta < static_cast<double>(d) ? AssumptionStatus::holds
                                                : AssumptionStatus::fails;
            if (d == 2) {
                // Need gamma in (0,1/2) with beta + 2*gamma < 2; we require
                // beta < 1 so that the whole gamma range (0,1/2) is admissible.
                r.vii = beta < 1.0 ? AssumptionStatus::holds : AssumptionStatus::fails;
            } else if (d > 2) {
                // integral r^{1-beta} dr near 0 finite iff beta < 2.
                r.vii = beta < 2.0 ? AssumptionStatus::holds : AssumptionStatus::fails;
            } else {
                r.vii = AssumptionStatus::undetermined;  // d=1 not covered
            }
            r.separated_from_zero = beta == 0.0;
            break;
        }
        case ProfileKind::radial_smooth:
            // 1/lambda ~ scale/r near 0, i.e. the beta=1 behaviour.
            r.i = d >= 2 ? AssumptionStatus::holds : AssumptionStatus::undetermined;
            r.vii = d >= 2 ? AssumptionStatus::holds : AssumptionStatus::undetermined;
            r.separated_from_zero = false;
            break;
    }

    auto ok = [](AssumptionStatus s) { return s == AssumptionStatus::holds; };
    r.theorem_separated = ok(r.i) && ok(r.ii) && r.separated_from_zero;
    r.theorem_radial = ok(r.i) && ok(r.vi) && ok(r.vii);
    r.theorem_diagonal = ok(r.i) && ok(r.ii) && ok(r.iii) && ok(r.vii);
    return r;
}

const char* to_string(AssumptionStatus s) {
    switch (s) {
        case AssumptionStatus::holds: return "holds";
        case AssumptionStatus::fails: return "fails";
        case AssumptionStatus::undetermined: return "undetermined";
    }
    return "?";
}

std::string AssumptionReport::summary() const {
    std::ostringstream os;
    os << "(i)=" << to_string(i) << " (ii)=" << to_string(ii)
       << " (iii)=" << to_string(iii) << " (vi)=" << to_string(vi)
       << " (vii)=" << to_string(vii)
       << "; separated_from_zero=" << (separated_from_zero ? "yes" : "no")
       << "; applicable:";
    if (theorem_separated) os << " separated";
    if (theorem_radial) os << " radial";
    if (theorem_diagonal) os << " diagonal";
    if (!theorem_separated && !theorem_radial && !theorem_diagonal) os << " none";
    return os.str();
}

}  // namespace tcw
