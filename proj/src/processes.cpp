#include "glstat/processes.hpp"

#include <cmath>
#include <stdexcept>

#include "glstat/special.hpp"

namespace glstat {

void ParetoParams::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("ParetoParams: sigma must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("ParetoParams: alpha must be positive");
}

double pareto_cdf(const ParetoParams& params, double x) {
  params.validate();
  if (x < params.sigma) return 0.0;
  return 1.0 - std::pow(params.sigma / x, params.alpha);
}

double pareto_inverse(const ParetoParams& params, double u) {
  params.validate();
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("pareto_inverse: u must be in [0,1)");
  return params.sigma * std::pow(1.0 - u, -1.0 / params.alpha);
}

void ProcessConfig::validate() const {
  pareto.validate();
  if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("ProcessConfig: |rho| must be < 1");
  if (n < 1) throw std::invalid_argument("ProcessConfig: n must be >= 1");
}

Sample generate(const ProcessConfig& config, Rng& rng) {
  config.validate();
  Sample s;
  s.values.resize(static_cast<std::size_t>(config.n));
  if (config.kind == ProcessKind::iid_pareto) {
    for (auto& v : s.values) v = pareto_inverse(config.pareto, rng.uniform01());
    return s;
  }
  // Latent stationary Gaussian AR(1) with unit marginal variance, pushed
  // through Phi and the Pareto inverse CDF.
  double rho = config.rho;
  double innov_sd = std::sqrt(1.0 - rho * rho);
  double z = rng.normal();
  for (auto& v : s.values) {
    double u = normal_cdf(z);
    if (u >= 1.0) u = std::nextafter(1.0, 0.0);
    v = pareto_inverse(config.pareto, u);
    z = rho * z + innov_sd * rng.normal();
  }
  return s;
}

Sample generate(const ProcessConfig& config) {
  Rng rng = Rng::stream(config.seed, 0);
  return generate(config, rng);
}

}  // namespace glstat
