#pragma once

#include <cstdint>

#include "glstat/empirical_u.hpp"
#include "glstat/rng.hpp"

namespace glstat {

// Pareto distribution F(x) = 1 - (sigma/x)^alpha for x >= sigma.
struct ParetoParams {
  double sigma = 1.0;
  double alpha = 1.0;

  void validate() const;
};

double pareto_cdf(const ParetoParams& params, double x);
// Inverse CDF: sigma * (1-u)^(-1/alpha), u in [0, 1).
double pareto_inverse(const ParetoParams& params, double u);

// Re-exported here because the process generators and the GM kernel share it.
double chi_square_median(int k);

enum class ProcessKind { iid_pareto, ar1_pareto };

// Data-generating process: i.i.d. Pareto, or a latent Gaussian AR(1) pushed
// through the Gaussian copula so the margins stay exactly Pareto.
struct ProcessConfig {
  ProcessKind kind = ProcessKind::iid_pareto;
  ParetoParams pareto;
  double rho = 0.0;  // latent AR(1) coefficient, 0 for iid
  int n = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

Sample generate(const ProcessConfig& config);
// Same, drawing from a caller-provided stream (used by the harness to give
// each replicate an independent stream).
Sample generate(const ProcessConfig& config, Rng& rng);

}  // namespace glstat
