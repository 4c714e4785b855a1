#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tcw {

/// Sorted sample set with right-continuous ECDF semantics.
class EmpiricalDistribution {
  public:
    explicit EmpiricalDistribution(std::vector<double> samples);

    [[nodiscard]] std::size_t count() const { return samples_.size(); }
    [[nodiscard]] const std::vector<double>& sorted() const { return samples_; }

    /// ECDF(x) = (#samples <= x) / n.
    [[nodiscard]] double ecdf(double x) const;

  private:
    std::vector<double> samples_;
};

struct TestReport {
    std::string name;
    double value = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;  // 0 for one-sample statistics
    double threshold = 0.0;
    bool pass = false;
    double se = 0.0;  // standard error where applicable, else 0
};

/// Two-sample Kolmogorov-Smirnov distance sup_x |F_a(x) - F_b(x)| by merge
/// scan over the pooled order statistics.
TestReport ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// One-sample KS distance max_i max(i/n - F(x_i), F(x_i) - (i-1)/n).
TestReport ks_one_sample(const EmpiricalDistribution& a,
                         const std::function<double(double)>& cdf);

/// Exp(1) distribution function: 0 for u <= 0, else 1 - e^{-u}.
double exp1_cdf(double u);

/// Standard normal distribution function.
double normal_cdf(double x);

/// chi distribution tail P(|Z| > c) for Z a 3-dimensional standard normal.
double chi3_sf(double c);

struct MeanResult {
    double mean = 0.0;
    double se = 0.0;
};

/// Sample mean with standard error sqrt(sample variance / n); needs n >= 2.
MeanResult mc_mean(const std::vector<double>& samples);

}  // namespace tcw
