#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "glstat/gm_pareto.hpp"
#include "glstat/processes.hpp"
#include "glstat/subsampling.hpp"

namespace glstat {

inline constexpr const char* kVersion = "0.1.0";

// Kernel-dimension choice for a table row: a fixed m, or m = sample size
// (the modified-ML comparator).
struct MChoice {
  bool m_eq_n = false;
  int m = 2;

  std::string label() const { return m_eq_n ? "n" : std::to_string(m); }
  Estimator estimator(std::uint64_t budget = kDefaultEnumerationBudget) const;
};

enum class ExperimentKind { table_coverage, sensitivity_curve, clt_check, bahadur_decay };

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::table_coverage;
  ProcessConfig process;
  std::vector<MChoice> m_values;
  std::vector<SubsamplingConfig> sub;
  int replicates = 500;
  std::string output_path = "out.csv";
  std::uint64_t seed = 0;
  // sensitivity_curve
  std::vector<double> y_grid;
  // clt_check / bahadur_decay
  std::vector<int> n_ladder;
  double quantile_p = 0.5;

  void validate() const;
  std::string json_dump() const;
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

std::vector<double> default_y_grid(int count = 200, double lo = 0.1, double hi = 100.0);

struct CoverageRow {
  std::string process;
  double rho = 0.0;
  std::string m_label;
  int b = 0;
  double gamma = 0.0;
  int replicates = 0;
  double coverage = 0.0;
  double mc_stderr = 0.0;
  double mean_length = 0.0;
  double sd_length = 0.0;
};

struct SensitivityRow {
  double y = 0.0;
  double cp_gm = 0.0;
  double cp_ml = 0.0;
};

struct CltRow {
  int n = 0;
  int replicates = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double ks_distance = 0.0;
  double lrv_batch_means = 0.0;
};

struct BahadurRow {
  int n = 0;
  int replicates = 0;
  double median_scaled_remainder = 0.0;  // median of sqrt(n)*|R_n|
};

std::vector<CoverageRow> run_table_coverage(const ExperimentConfig& config);
std::vector<SensitivityRow> run_sensitivity_curve(const ExperimentConfig& config);
std::vector<CltRow> run_clt_check(const ExperimentConfig& config);
std::vector<BahadurRow> run_bahadur_decay(const ExperimentConfig& config);

// Runs the configured experiment and writes CSV plus a JSON manifest sidecar.
void run_experiment(const ExperimentConfig& config);

std::string csv_text(const ExperimentConfig& config, const std::vector<CoverageRow>& rows);
std::string csv_text(const ExperimentConfig& config, const std::vector<SensitivityRow>& rows);
std::string csv_text(const ExperimentConfig& config, const std::vector<CltRow>& rows);
std::string csv_text(const ExperimentConfig& config, const std::vector<BahadurRow>& rows);

// FNV-1a hash of the canonical JSON form, hex encoded.
std::string config_hash(const ExperimentConfig& config);

// Batch-means estimate of the long-run variance of a scalar series:
// batch_len * Var(non-overlapping batch means).
double long_run_variance_batch_means(std::span<const double> series, int batch_len);

// Same idea for a statistic: batch_len * Var(estimator over non-overlapping
// length-batch_len segments). Estimates the variance in the CLT scaling.
double long_run_variance_batch_means(const Sample& series, int batch_len,
                                     const Estimator& estimator);

// One-sample Kolmogorov-Smirnov distance to the standard normal.
double ks_distance_to_normal(std::vector<double> standardized);

// Two-sample Kolmogorov-Smirnov distance and asymptotic p-value.
double ks_two_sample_distance(std::vector<double> a, std::vector<double> b);
double ks_two_sample_pvalue(std::size_t na, std::size_t nb, double distance);

}  // namespace glstat
