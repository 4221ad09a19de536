#pragma once

#include <cstdint>
#include <vector>

#include "glstat/empirical_u.hpp"
#include "glstat/subsampling.hpp"

namespace glstat {

struct GMConfig {
  int m = 2;
  std::uint64_t budget = kDefaultEnumerationBudget;

  void validate() const;
};

// All C(n,m) GM kernel values, unsorted, from a log-precomputing enumeration
// that is parallel over the leading index.
std::vector<double> gm_kernel_values(const Sample& sample, const GMConfig& config);

// Generalized-median estimator of the Pareto tail index: the median of the
// modified-ML kernel over all m-subsets, i.e. H_n^{-1}(1/2).
double gm_estimate(const Sample& sample, const GMConfig& config);

// The m=n member of the same family: M_{2n-2}/(2n) / ((1/n) sum log X_i - log min X_i).
double ml_estimate(const Sample& sample);

// Raw Hill/ML estimator n / sum log(X_i / min X_i), for reference.
double hill_estimate(const Sample& sample);

// Mean over base samples of 1[alpha in CI] - 1[alpha in CI with contaminant y
// appended], the contamination sensitivity value CP at y.
double coverage_curve(const std::vector<Sample>& base_samples, double y, double alpha_true,
                      const Estimator& estimator, const SubsamplingConfig& sub);
double coverage_curve(const std::vector<Sample>& base_samples, double y, double alpha_true,
                      const GMConfig& config, const SubsamplingConfig& sub);

namespace serial {
double gm_estimate(const Sample& sample, const GMConfig& config);
}  // namespace serial

}  // namespace glstat
