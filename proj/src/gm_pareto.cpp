#include "glstat/gm_pareto.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "glstat/errors.hpp"
#include "glstat/kernels.hpp"
#include "glstat/special.hpp"

namespace glstat {

void GMConfig::validate() const {
  if (m < 2) throw std::invalid_argument("GMConfig: m must be >= 2");
}

namespace {

void check_positive(const Sample& sample) {
  for (double v : sample.values)
    if (!(v > 0.0)) throw std::domain_error("gm/ml estimate: data must be positive");
}

// Emits kernel values for all (m - level) further indices chosen from
// [start, n), extending a partial log-sum and log-min. Degenerate
// denominators are flagged rather than thrown (called inside a parallel loop).
void emit_gm_values(const std::vector<double>& logs, int m, double scale, int level, int start,
                    double partial_sum, double partial_min, double*& out, bool& degenerate) {
  int n = static_cast<int>(logs.size());
  if (level == m) {
    double denom = partial_sum / m - partial_min;
    if (denom <= 0.0) {
      degenerate = true;
      *out++ = std::numeric_limits<double>::quiet_NaN();
    } else {
      *out++ = scale / denom;
    }
    return;
  }
  for (int i = start; i <= n - (m - level); ++i)
    emit_gm_values(logs, m, scale, level + 1, i + 1, partial_sum + logs[static_cast<std::size_t>(i)],
                   std::min(partial_min, logs[static_cast<std::size_t>(i)]), out, degenerate);
}

}  // namespace

std::vector<double> gm_kernel_values(const Sample& sample, const GMConfig& config) {
  config.validate();
  sample.validate();
  check_positive(sample);
  int n = static_cast<int>(sample.n());
  int m = config.m;
  if (n < m) throw std::invalid_argument("gm_kernel_values: insufficient sample, n < m");
  std::uint64_t total = binomial(n, m);
  if (total > config.budget) throw BudgetError(total, config.budget);

  std::vector<double> logs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) logs[static_cast<std::size_t>(i)] = std::log(sample.values[static_cast<std::size_t>(i)]);
  double scale = chi_square_median(2 * m - 2) / (2.0 * m);

  std::vector<double> values(total);
  std::vector<std::uint64_t> offset(static_cast<std::size_t>(n - m + 2), 0);
  for (int i1 = 0; i1 <= n - m; ++i1)
    offset[static_cast<std::size_t>(i1) + 1] =
        offset[static_cast<std::size_t>(i1)] + binomial(n - i1 - 1, m - 1);

  std::atomic<bool> degenerate{false};
#pragma omp parallel for schedule(dynamic)
  for (int i1 = 0; i1 <= n - m; ++i1) {
    double* out = values.data() + offset[static_cast<std::size_t>(i1)];
    bool local_degenerate = false;
    emit_gm_values(logs, m, scale, 1, i1 + 1, logs[static_cast<std::size_t>(i1)],
                   logs[static_cast<std::size_t>(i1)], out, local_degenerate);
    if (local_degenerate) degenerate = true;
  }
  if (degenerate)
    throw DegenerateKernelError("gm kernel: all-equal inputs in some m-subset");
  return values;
}

double gm_estimate(const Sample& sample, const GMConfig& config) {
  std::vector<double> values = gm_kernel_values(sample, config);
  // Median = H_n^{-1}(1/2) = sorted value at 1-based index ceil(N/2).
  std::uint64_t k = (values.size() + 1) / 2;
  std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
  return values[k - 1];
}

namespace serial {
double gm_estimate(const Sample& sample, const GMConfig& config) {
  config.validate();
  check_positive(sample);
  auto dist = serial::build_empirical_udist(sample, gm_pareto_kernel(config.m), config.budget);
  return h_n_inverse(dist, 0.5);
}
}  // namespace serial

double ml_estimate(const Sample& sample) {
  sample.validate();
  check_positive(sample);
  int n = static_cast<int>(sample.n());
  if (n < 2) throw std::invalid_argument("ml_estimate: need n >= 2");
  double sumlog = 0.0;
  double minlog = std::numeric_limits<double>::infinity();
  for (double v : sample.values) {
    double l = std::log(v);
    sumlog += l;
    minlog = std::min(minlog, l);
  }
  double denom = sumlog / n - minlog;
  if (denom <= 0.0) throw DegenerateKernelError("ml_estimate: all sample values equal");
  return chi_square_median(2 * n - 2) / (2.0 * n) / denom;
}

double hill_estimate(const Sample& sample) {
  sample.validate();
  check_positive(sample);
  int n = static_cast<int>(sample.n());
  if (n < 2) throw std::invalid_argument("hill_estimate: need n >= 2");
  double minv = *std::min_element(sample.values.begin(), sample.values.end());
  double s = 0.0;
  for (double v : sample.values) s += std::log(v / minv);
  if (s <= 0.0) throw DegenerateKernelError("hill_estimate: all sample values equal");
  return n / s;
}

double coverage_curve(const std::vector<Sample>& base_samples, double y, double alpha_true,
                      const Estimator& estimator, const SubsamplingConfig& sub) {
  if (base_samples.empty()) throw std::invalid_argument("coverage_curve: no base samples");
  if (!(y > 0.0)) throw std::domain_error("coverage_curve: contaminant must be positive");
  double total = 0.0;
  for (const auto& base : base_samples) {
    SubsampleResult clean = confidence_interval(base, estimator, sub);
    Sample contaminated = base;
    contaminated.values.push_back(y);  // appended at the series end
    SubsampleResult dirty = confidence_interval(contaminated, estimator, sub);
    total += (clean.covers(alpha_true) ? 1.0 : 0.0) - (dirty.covers(alpha_true) ? 1.0 : 0.0);
  }
  return total / static_cast<double>(base_samples.size());
}

double coverage_curve(const std::vector<Sample>& base_samples, double y, double alpha_true,
                      const GMConfig& config, const SubsamplingConfig& sub) {
  config.validate();
  Estimator est = [config](const Sample& s) { return gm_estimate(s, config); };
  return coverage_curve(base_samples, y, alpha_true, est, sub);
}

}  // namespace glstat
