#include "tcw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tcw/octant.hpp"

namespace tcw {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty())
        throw config_error("empirical distribution: sample set must be nonempty");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::ecdf(double x) const {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
    return static_cast<double>(it - samples_.begin()) /
           static_cast<double>(samples_.size());
}

TestReport ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    const auto& xa = a.sorted();
    const auto& xb = b.sorted();
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());

    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < xa.size() && j < xb.size()) {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] <= x) ++i;
        while (j < xb.size() && xb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    if (i < xa.size()) d = std::max(d, 1.0 - static_cast<double>(i) / na);
    if (j < xb.size()) d = std::max(d, 1.0 - static_cast<double>(j) / nb);

    TestReport r;
    r.name = "ks_two_sample";
    r.value = d;
    r.n_a = xa.size();
    r.n_b = xb.size();
    r.se = std::sqrt((na + nb) / (na * nb));
    return r;
}

TestReport ks_one_sample(const EmpiricalDistribution& a,
                         const std::function<double(double)>& cdf) {
    const auto& x = a.sorted();
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    TestReport r;
    r.name = "ks_one_sample";
    r.value = d;
    r.n_a = x.size();
    r.se = 1.0 / std::sqrt(n);
    return r;
}

double exp1_cdf(double u) { return u <= 0.0 ? 0.0 : -std::expm1(-u); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double chi3_sf(double c) {
    if (c <= 0.0) return 1.0;
    const double cdf = std::erf(c / std::numbers::sqrt2) -
                       std::sqrt(2.0 / std::numbers::pi) * c * std::exp(-0.5 * c * c);
    return 1.0 - cdf;
}

MeanResult mc_mean(const std::vector<double>& samples) {
    if (samples.size() < 2)
        throw config_error("mc_mean: need at least 2 samples");
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double s : samples) sum += s;
    const double mean = sum / n;
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    const double var = ss / (n - 1.0);
    return MeanResult{mean, std::sqrt(var / n)};
}

}  // namespace tcw
