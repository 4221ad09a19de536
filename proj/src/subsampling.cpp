#include "glstat/subsampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glstat/errors.hpp"

namespace glstat {

void SubsamplingConfig::validate() const {
  if (block_length < 1) throw std::invalid_argument("SubsamplingConfig: block_length must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("SubsamplingConfig: gamma must be in (0,1)");
}

std::vector<double> subsample_estimates(const Sample& sample, int b, const Estimator& estimator) {
  sample.validate();
  int n = static_cast<int>(sample.n());
  if (b < 1 || b > n) throw std::invalid_argument("subsample_estimates: need 1 <= b <= n");
  int windows = n - b + 1;
  std::vector<double> estimates(static_cast<std::size_t>(windows));
  int failed = -1;
  std::string cause;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < windows; ++i) {
    Sample window;
    window.values.assign(sample.values.begin() + i, sample.values.begin() + i + b);
    try {
      estimates[static_cast<std::size_t>(i)] = estimator(window);
    } catch (const std::exception& e) {
#pragma omp critical
      if (failed < 0 || i < failed) {
        failed = i;
        cause = e.what();
      }
    }
  }
  if (failed >= 0) throw WindowEstimateError(static_cast<std::size_t>(failed), cause);
  return estimates;
}

namespace serial {
std::vector<double> subsample_estimates(const Sample& sample, int b, const Estimator& estimator) {
  sample.validate();
  int n = static_cast<int>(sample.n());
  if (b < 1 || b > n) throw std::invalid_argument("subsample_estimates: need 1 <= b <= n");
  std::vector<double> estimates;
  estimates.reserve(static_cast<std::size_t>(n - b + 1));
  for (int i = 0; i + b <= n; ++i) {
    Sample window;
    window.values.assign(sample.values.begin() + i, sample.values.begin() + i + b);
    try {
      estimates.push_back(estimator(window));
    } catch (const std::exception& e) {
      throw WindowEstimateError(static_cast<std::size_t>(i), e.what());
    }
  }
  return estimates;
}
}  // namespace serial

double l_n_quantile(const std::vector<double>& block_estimates, double full_estimate, int b,
                    double level) {
  if (block_estimates.empty()) throw std::invalid_argument("l_n_quantile: no block estimates");
  if (!(level > 0.0 && level < 1.0))
    throw std::domain_error("l_n_quantile: level must be in (0,1)");
  double root_b = std::sqrt(static_cast<double>(b));
  std::vector<double> centered(block_estimates.size());
  for (std::size_t i = 0; i < block_estimates.size(); ++i)
    centered[i] = root_b * (block_estimates[i] - full_estimate);
  std::sort(centered.begin(), centered.end());
  double pn = level * static_cast<double>(centered.size());
  auto k = static_cast<std::size_t>(std::ceil(pn - 16.0 * pn * 2.2e-16));
  if (k < 1) k = 1;
  if (k > centered.size()) k = centered.size();
  return centered[k - 1];
}

SubsampleResult confidence_interval(const Sample& sample, const Estimator& estimator,
                                    const SubsamplingConfig& config) {
  config.validate();
  sample.validate();
  int n = static_cast<int>(sample.n());
  SubsampleResult result;
  result.full_estimate = estimator(sample);
  result.block_estimates = subsample_estimates(sample, config.block_length, estimator);
  result.q_lo = l_n_quantile(result.block_estimates, result.full_estimate, config.block_length,
                             config.gamma / 2.0);
  result.q_hi = l_n_quantile(result.block_estimates, result.full_estimate, config.block_length,
                             1.0 - config.gamma / 2.0);
  double root_n = std::sqrt(static_cast<double>(n));
  result.ci_lo = result.full_estimate - result.q_hi / root_n;
  result.ci_hi = result.full_estimate - result.q_lo / root_n;
  return result;
}

}  // namespace glstat
