#pragma once

#include <functional>
#include <vector>

#include "glstat/empirical_u.hpp"

namespace glstat {

using Estimator = std::function<double(const Sample&)>;

struct SubsamplingConfig {
  int block_length = 0;  // b
  double gamma = 0.10;   // confidence parameter: level is 1 - gamma

  void validate() const;
};

// Block estimates, the centered-scaled quantiles and the resulting interval.
struct SubsampleResult {
  std::vector<double> block_estimates;  // n - b + 1 overlapping windows
  double full_estimate = 0.0;
  double q_lo = 0.0;  // q*_{gamma/2}
  double q_hi = 0.0;  // q*_{1-gamma/2}
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  double length() const { return ci_hi - ci_lo; }
  bool covers(double value) const { return ci_lo <= value && value <= ci_hi; }
};

// Estimator applied to each of the n-b+1 consecutive length-b windows, in
// original order. A failing window raises WindowEstimateError with its index.
std::vector<double> subsample_estimates(const Sample& sample, int b, const Estimator& estimator);

// Generalized inverse (inf form) of L_n, the empirical CDF of
// sqrt(b) * (block_estimate - full_estimate).
double l_n_quantile(const std::vector<double>& block_estimates, double full_estimate, int b,
                    double level);

// CI = [full - q_hi/sqrt(n), full - q_lo/sqrt(n)].
SubsampleResult confidence_interval(const Sample& sample, const Estimator& estimator,
                                    const SubsamplingConfig& config);

namespace serial {
std::vector<double> subsample_estimates(const Sample& sample, int b, const Estimator& estimator);
}  // namespace serial

}  // namespace glstat
