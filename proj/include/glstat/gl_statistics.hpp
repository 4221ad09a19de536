#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "glstat/empirical_u.hpp"
#include "glstat/kernels.hpp"
#include "glstat/rng.hpp"

namespace glstat {

// Weight function J on (0,1), zero outside [lo, hi]. Piecewise-constant
// forms integrate exactly; custom forms use adaptive quadrature.
struct WeightFunction {
  enum class Type { Zero, Constant, Trimmed, Custom };

  Type type = Type::Zero;
  double lo = 0.0;
  double hi = 1.0;
  double level = 0.0;                  // constant value on [lo, hi]
  std::function<double(double)> fn;    // Custom only

  double operator()(double t) const;
  // Integral of J over [a, b].
  double integral(double a, double b) const;

  static WeightFunction zero();
  static WeightFunction constant();  // J = 1 on (0,1)
  // J = 1/(1-2*gamma) on (gamma, 1-gamma), the trimming weight.
  static WeightFunction trimmed(double gamma);
  static WeightFunction custom(std::function<double(double)> f, double lo, double hi);
};

// Weight specification of a generalized L-statistic: integral part J plus
// point masses a_i at quantile levels p_i.
struct GLSpec {
  WeightFunction J;
  std::vector<std::pair<double, double>> point_masses;  // (a_i, p_i), p_i in (0,1)

  void validate() const;
};

// T(H_n) = sum_i [int_{(i-1)/N}^{i/N} J] * H_n^{-1}(i/N) + sum a_i H_n^{-1}(p_i).
double gl_statistic(const EmpiricalUDist& dist, const GLSpec& spec);

// Influence kernel A of the CLT for GL-statistics, evaluated against an
// analytic kernel law.
struct InfluenceKernelA {
  GLSpec spec;
  KernelLaw law;
  Kernel kernel;
};

double influence_kernel_a(const InfluenceKernelA& ik, std::span<const double> x);

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo estimate of m^2 * Var(E[A | Y_1]) for i.i.d. data, with the
// conditional expectation itself estimated by a nested inner loop.
MCEstimate sigma_squared_iid(const InfluenceKernelA& ik,
                             const std::function<double(Rng&)>& sampler, int reps,
                             int inner = 256, std::uint64_t seed = 0);

}  // namespace glstat
