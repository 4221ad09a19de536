#pragma once

#include <functional>
#include <span>
#include <string>

namespace glstat {

// Symmetric m-argument kernel h(x_1,...,x_m). Immutable after construction;
// eval is pure and reentrant.
struct Kernel {
  int m = 0;
  std::string name;
  std::function<double(std::span<const double>)> eval;

  double operator()(std::span<const double> xs) const { return eval(xs); }
  double operator()(std::initializer_list<double> xs) const {
    return eval(std::span<const double>(xs.begin(), xs.size()));
  }
};

// Analytic distribution of a kernel value under i.i.d. margins; serves as
// the oracle H_F / h_F in tests and in the quantile-remainder diagnostics.
struct KernelLaw {
  std::function<double(double)> cdf;
  std::function<double(double)> pdf;
  double support_lo = 0.0;
  double support_hi = 0.0;  // may be +infinity

  // Generalized inverse of cdf by bracketed bisection.
  double quantile(double p) const;
};

// h(x_1,...,x_m) = (x_1+...+x_m)/2, the generalized Hodges-Lehmann kernel
// (the 1/2 factor applies for every m).
Kernel hodges_lehmann_kernel(int m);

// h(x_1,...,x_m) = (x_1+...+x_m)/m, the conventional mean variant.
Kernel mean_of_m_kernel(int m);

// h(x) = x.
Kernel identity_kernel();

// Modified maximum-likelihood kernel for the Pareto tail index:
// h(x) = M_{2m-2}/(2m) / ((1/m) sum log x_i - log min x_i).
// Inputs must be positive; all-equal inputs raise DegenerateKernelError.
Kernel gm_pareto_kernel(int m);

// Distribution of gm_pareto_kernel(m) under i.i.d. Pareto margins with tail
// index alpha: H_F(t) = 1 - G_{2m-2}(M_{2m-2} * alpha / t).
KernelLaw gm_pareto_kernel_law(int m, double alpha);

// Lookup used by the CLI: "hodges_lehmann", "identity", "gm_pareto", "mean_of_m".
Kernel kernel_by_name(const std::string& name, int m);

}  // namespace glstat
