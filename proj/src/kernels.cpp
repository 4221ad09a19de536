#include "glstat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "glstat/errors.hpp"
#include "glstat/special.hpp"

namespace glstat {

double KernelLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("KernelLaw::quantile: p must be in (0,1)");
  double lo = support_lo;
  double hi = support_hi;
  if (!std::isfinite(lo)) lo = -1.0;
  if (!std::isfinite(hi)) hi = 1.0;
  // Expand brackets until the cdf straddles p.
  while (cdf(lo) > p && std::isfinite(lo)) lo = lo < 0 ? lo * 2.0 : lo - (hi - lo) - 1.0;
  while (cdf(hi) < p) hi = hi > 0 ? hi * 2.0 : hi + 1.0;
  if (lo < support_lo) lo = support_lo;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * std::fmax(1.0, std::fabs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

Kernel hodges_lehmann_kernel(int m) {
  if (m < 1) throw std::invalid_argument("hodges_lehmann_kernel: m must be >= 1");
  return Kernel{m, "hodges_lehmann", [](std::span<const double> xs) {
                  double s = 0.0;
                  for (double x : xs) s += x;
                  return 0.5 * s;
                }};
}

Kernel mean_of_m_kernel(int m) {
  if (m < 1) throw std::invalid_argument("mean_of_m_kernel: m must be >= 1");
  return Kernel{m, "mean_of_m", [m](std::span<const double> xs) {
                  double s = 0.0;
                  for (double x : xs) s += x;
                  return s / m;
                }};
}

Kernel identity_kernel() {
  return Kernel{1, "identity", [](std::span<const double> xs) { return xs[0]; }};
}

namespace {
double gm_kernel_denominator(std::span<const double> xs) {
  double sumlog = 0.0;
  double minlog = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    if (!(x > 0.0)) throw std::domain_error("gm_pareto kernel: inputs must be positive");
    double l = std::log(x);
    sumlog += l;
    minlog = std::min(minlog, l);
  }
  return sumlog / static_cast<double>(xs.size()) - minlog;
}
}  // namespace

Kernel gm_pareto_kernel(int m) {
  if (m < 2) throw std::invalid_argument("gm_pareto_kernel: m must be >= 2");
  double scale = chi_square_median(2 * m - 2) / (2.0 * m);
  return Kernel{m, "gm_pareto", [scale](std::span<const double> xs) {
                  double denom = gm_kernel_denominator(xs);
                  if (denom <= 0.0)
                    throw DegenerateKernelError(
                        "gm_pareto kernel: all inputs equal, denominator is zero");
                  return scale / denom;
                }};
}

KernelLaw gm_pareto_kernel_law(int m, double alpha) {
  if (m < 2) throw std::invalid_argument("gm_pareto_kernel_law: m must be >= 2");
  if (!(alpha > 0.0)) throw std::invalid_argument("gm_pareto_kernel_law: alpha must be positive");
  int k = 2 * m - 2;
  double median = chi_square_median(k);
  KernelLaw law;
  law.support_lo = 0.0;
  law.support_hi = std::numeric_limits<double>::infinity();
  law.cdf = [k, median, alpha](double t) {
    if (t <= 0.0) return 0.0;
    return 1.0 - chi_square_cdf(k, median * alpha / t);
  };
  law.pdf = [k, median, alpha](double t) {
    if (t <= 0.0) return 0.0;
    double u = median * alpha / t;
    return chi_square_pdf(k, u) * u / t;
  };
  return law;
}

Kernel kernel_by_name(const std::string& name, int m) {
  if (name == "hodges_lehmann") return hodges_lehmann_kernel(m);
  if (name == "mean_of_m") return mean_of_m_kernel(m);
  if (name == "identity") return identity_kernel();
  if (name == "gm_pareto") return gm_pareto_kernel(m);
  throw std::invalid_argument("unknown kernel name: " + name);
}

}  // namespace glstat
