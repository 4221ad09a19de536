#include "glstat/gl_statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glstat/errors.hpp"
#include "glstat/special.hpp"

namespace glstat {

double WeightFunction::operator()(double t) const {
  if (type == Type::Zero) return 0.0;
  if (t <= lo || t >= hi) return 0.0;
  if (type == Type::Custom) return fn(t);
  return level;
}

double WeightFunction::integral(double a, double b) const {
  if (type == Type::Zero) return 0.0;
  double l = std::max(a, lo);
  double u = std::min(b, hi);
  if (u <= l) return 0.0;
  if (type != Type::Custom) return level * (u - l);
  return adaptive_simpson(fn, l, u, 1e-10);
}

WeightFunction WeightFunction::zero() { return WeightFunction{}; }

WeightFunction WeightFunction::constant() {
  WeightFunction w;
  w.type = Type::Constant;
  w.lo = 0.0;
  w.hi = 1.0;
  w.level = 1.0;
  return w;
}

WeightFunction WeightFunction::trimmed(double gamma) {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("WeightFunction::trimmed: gamma must be in (0, 1/2)");
  WeightFunction w;
  w.type = Type::Trimmed;
  w.lo = gamma;
  w.hi = 1.0 - gamma;
  w.level = 1.0 / (1.0 - 2.0 * gamma);
  return w;
}

WeightFunction WeightFunction::custom(std::function<double(double)> f, double lo, double hi) {
  WeightFunction w;
  w.type = Type::Custom;
  w.fn = std::move(f);
  w.lo = lo;
  w.hi = hi;
  return w;
}

void GLSpec::validate() const {
  for (const auto& [a, p] : point_masses) {
    (void)a;
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("GLSpec: point-mass levels must be in (0,1)");
  }
}

double gl_statistic(const EmpiricalUDist& dist, const GLSpec& spec) {
  spec.validate();
  const auto& v = dist.kernel_values;
  if (v.empty()) throw std::invalid_argument("gl_statistic: empty distribution");
  double total = 0.0;
  if (spec.J.type != WeightFunction::Type::Zero) {
    auto N = static_cast<double>(v.size());
    // Rows with weight support: [lo, hi] maps to indices around lo*N..hi*N.
    auto first = static_cast<std::size_t>(std::max(0.0, std::floor(spec.J.lo * N)));
    auto last = static_cast<std::size_t>(
        std::min(N, std::ceil(spec.J.hi * N) + 1.0));
    for (std::size_t i = first; i < last; ++i) {
      double w = spec.J.integral(static_cast<double>(i) / N, static_cast<double>(i + 1) / N);
      if (w != 0.0) total += w * v[i];
    }
  }
  for (const auto& [a, p] : spec.point_masses) total += a * h_n_inverse(dist, p);
  return total;
}

double influence_kernel_a(const InfluenceKernelA& ik, std::span<const double> x) {
  ik.spec.validate();
  double hx = ik.kernel.eval(x);
  double total = 0.0;

  const auto& J = ik.spec.J;
  if (J.type != WeightFunction::Type::Zero) {
    double plo = std::max(J.lo, 1e-10);
    double phi = std::min(J.hi, 1.0 - 1e-10);
    double ylo = ik.law.quantile(plo);
    double yhi = ik.law.quantile(phi);
    auto integrand = [&](double y) {
      double hf = ik.law.cdf(y);
      return ((hx <= y ? 1.0 : 0.0) - hf) * J(hf);
    };
    // The indicator jumps at y = hx; integrate each side separately.
    if (hx > ylo && hx < yhi) {
      total -= adaptive_simpson(integrand, ylo, hx, 1e-10);
      total -= adaptive_simpson(integrand, hx, yhi, 1e-10);
    } else {
      total -= adaptive_simpson(integrand, ylo, yhi, 1e-10);
    }
  }

  for (const auto& [a, p] : ik.spec.point_masses) {
    double xi = ik.law.quantile(p);
    double dens = ik.law.pdf(xi);
    if (dens < 1e-12)
      throw std::domain_error("influence_kernel_a: kernel density degenerate at quantile");
    total += a * (p - (hx <= xi ? 1.0 : 0.0)) / dens;
  }
  return total;
}

MCEstimate sigma_squared_iid(const InfluenceKernelA& ik,
                             const std::function<double(Rng&)>& sampler, int reps, int inner,
                             std::uint64_t seed) {
  if (reps < 1000) throw std::invalid_argument("sigma_squared_iid: reps must be >= 1000");
  if (inner < 2) throw std::invalid_argument("sigma_squared_iid: inner must be >= 2");
  int m = ik.kernel.m;
  std::vector<double> cond(static_cast<std::size_t>(reps));
  std::vector<double> inner_var(static_cast<std::size_t>(reps));
#pragma omp parallel for schedule(dynamic, 16)
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> args(static_cast<std::size_t>(m));
    args[0] = sampler(rng);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < inner; ++i) {
      for (int k = 1; k < m; ++k) args[static_cast<std::size_t>(k)] = sampler(rng);
      double a = influence_kernel_a(ik, std::span<const double>(args.data(), args.size()));
      s += a;
      s2 += a * a;
    }
    double mean = s / inner;
    cond[static_cast<std::size_t>(r)] = mean;
    inner_var[static_cast<std::size_t>(r)] = (s2 - inner * mean * mean) / (inner - 1);
  }

  double mean = 0.0;
  for (double c : cond) mean += c;
  mean /= reps;
  double var = 0.0, iv = 0.0;
  for (int r = 0; r < reps; ++r) {
    double d = cond[static_cast<std::size_t>(r)] - mean;
    var += d * d;
    iv += inner_var[static_cast<std::size_t>(r)];
  }
  var /= (reps - 1);
  iv /= reps;
  // Remove the inner-loop noise contribution from the variance estimate.
  double corrected = var - iv / inner;

  double se_sq = 0.0;
  for (double c : cond) {
    double d = (c - mean) * (c - mean) - var;
    se_sq += d * d;
  }
  se_sq = std::sqrt(se_sq / ((double)reps * (reps - 1)));

  MCEstimate est;
  est.value = m * static_cast<double>(m) * corrected;
  est.std_error = m * static_cast<double>(m) * se_sq;
  return est;
}

}  // namespace glstat
