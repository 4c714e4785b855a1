#include "tcw/clock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tcw/octant.hpp"

namespace tcw {

double MonotoneClock::value_at(double t) const {
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - times.begin()) - 1;
    const double w = (t - times[k]) / (times[k + 1] - times[k]);
    return values[k] + w * (values[k + 1] - values[k]);
}

MonotoneClock additive_functional(const SampledPath& path, const IntensityModel& model,
                                  double cap) {
    require_dimension(model.dimension, path.dimension(), "additive_functional");
    if (!(cap > 0.0)) throw config_error("additive_functional: cap must be > 0");

    const TimeGrid& g = path.grid();
    MonotoneClock S;
    S.integrand_cap = cap;
    S.times.resize(g.size());
    S.values.resize(g.size());
    S.times[0] = 0.0;
    S.values[0] = 0.0;

    // First interval: right-endpoint rectangle.  Vanishing profiles are
    // singular at the start point (paths launch at the origin), so the
    // trapezoid value there would be pure cap, not quadrature.
    double prev = std::min(1.0 / intensity_at(model, path.point(1)), cap);
    S.times[1] = g.time(1);
    S.values[1] = prev * g.step;
    for (std::size_t k = 2; k < g.size(); ++k) {
        const double cur = std::min(1.0 / intensity_at(model, path.point(k)), cap);
        S.times[k] = g.time(k);
        S.values[k] = S.values[k - 1] + 0.5 * (prev + cur) * g.step;
        prev = cur;
    }
    return S;
}

double inverse_clock(const MonotoneClock& S, double t) {
    if (t < 0.0) throw config_error("inverse_clock: t must be >= 0");
    if (t == 0.0) return 0.0;
    if (t >= S.values.back()) throw horizon_exhausted(t, S.values.back());

    // First breakpoint with value >= t; flat ties resolve to the left.
    const auto it = std::lower_bound(S.values.begin(), S.values.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - S.values.begin());
    if (S.values[k] == t) return S.times[k];
    // t lies strictly inside segment (k-1, k).
    const double w = (t - S.values[k - 1]) / (S.values[k] - S.values[k - 1]);
    return S.times[k - 1] + w * (S.times[k] - S.times[k - 1]);
}

std::vector<double> time_changed_path(const SampledPath& path, const MonotoneClock& S,
                                      const std::vector<double>& eval_times) {
    const std::size_t d = path.dimension();
    std::vector<double> out(eval_times.size() * d);
    for (std::size_t i = 0; i < eval_times.size(); ++i) {
        const double tau = inverse_clock(S, eval_times[i]);
        path.at(tau, {out.data() + i * d, d});
    }
    return out;
}

namespace {

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

[[noreturn]] void budget_error(const char* who, int budget, double reached,
                               double required) {
    std::ostringstream os;
    os << who << ": extension budget (" << budget << " doublings) exceeded; "
       << "clock reached " << reached << " but level " << required
       << " is required. Check the intensity model (S_B(infinity) should be "
       << "infinite under the validated assumptions).";
    throw config_error(os.str());
}

}  // namespace

NormalizedResult normalized_process(SampledPath path, const IntensityModel& model,
                                    double n, const std::vector<double>& eval_times,
                                    double cap, int extension_budget) {
    if (!(n >= 1.0)) throw config_error("normalized_process: n must be >= 1");
    const double target = n * max_of(eval_times);

    MonotoneClock S = additive_functional(path, model, cap);
    int doublings = 0;
    while (S.total() <= target) {
        if (doublings >= extension_budget)
            budget_error("normalized_process", extension_budget, S.total(), target);
        path = extend_path(path, 2.0 * path.grid().horizon());
        S = additive_functional(path, model, cap);
        ++doublings;
    }

    const std::size_t d = path.dimension();
    const double root_n = std::sqrt(n);
    NormalizedResult res{std::vector<double>(eval_times.size() * d),
                         std::vector<double>(eval_times.size()), std::move(path),
                         std::move(S)};
    for (std::size_t i = 0; i < eval_times.size(); ++i) {
        const double tau = inverse_clock(res.clock, n * eval_times[i]);
        res.nu[i] = tau / n;
        res.path.at(tau, {res.points.data() + i * d, d});
        for (std::size_t c = 0; c < d; ++c) res.points[i * d + c] /= root_n;
    }
    return res;
}

MonotoneClock limit_clock(const SampledPath& w_path, const IntensityModel& model) {
    require_dimension(model.dimension, w_path.dimension(), "limit_clock");
    const TimeGrid& g = w_path.grid();
    MonotoneClock nu;
    nu.integrand_cap = 1.0 / model.min_limit();
    nu.times.resize(g.size());
    nu.values.resize(g.size());
    nu.times[0] = 0.0;
    nu.values[0] = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) {
        nu.times[k] = g.time(k);
        nu.values[k] = nu.values[k - 1] + upsilon_at(model, w_path.point(k - 1)) * g.step;
    }
    return nu;
}

LimitResult limit_process(SampledPath w_path, const IntensityModel& model,
                          const std::vector<double>& eval_times, int extension_budget) {
    const double target = max_of(eval_times);
    MonotoneClock nu = limit_clock(w_path, model);
    int doublings = 0;
    while (nu.total() <= target) {
        if (doublings >= extension_budget)
            budget_error("limit_process", extension_budget, nu.total(), target);
        w_path = extend_path(w_path, 2.0 * w_path.grid().horizon());
        nu = limit_clock(w_path, model);
        ++doublings;
    }

    const std::size_t d = w_path.dimension();
    LimitResult res{std::vector<double>(eval_times.size() * d),
                    std::vector<double>(eval_times.size()), std::move(w_path),
                    std::move(nu)};
    for (std::size_t i = 0; i < eval_times.size(); ++i) {
        const double x = inverse_clock(res.clock, eval_times[i]);
        res.nu_inv[i] = x;
        res.path.at(x, {res.points.data() + i * d, d});
    }
    return res;
}

}  // namespace tcw
