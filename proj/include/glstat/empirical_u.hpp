#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "glstat/kernels.hpp"

namespace glstat {

// Observed series X_1,...,X_n. Order is preserved: block subsampling
// depends on it.
struct Sample {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
  void validate() const;
};

// Sorted multiset of the C(n,m) kernel values h(X_{i_1},...,X_{i_m}),
// i_1 < ... < i_m.
struct EmpiricalUDist {
  std::vector<double> kernel_values;  // non-decreasing
  int n = 0;
  int m = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t(1) << 26;

// C(n, m); throws std::overflow_error if the value exceeds 2^63.
std::uint64_t binomial(std::uint64_t n, std::uint64_t m);

// Calls f(idx) for every m-combination idx[0] < ... < idx[m-1] of {0,...,n-1},
// in lexicographic order.
template <typename F>
void for_each_combination(int n, int m, F&& f) {
  if (m > n || m <= 0) return;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  std::span<const int> view(idx.data(), static_cast<std::size_t>(m));
  for (;;) {
    f(view);
    int j = m - 1;
    while (j >= 0 && idx[j] == n - m + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int k = j + 1; k < m; ++k) idx[k] = idx[k - 1] + 1;
  }
}

// (1/C(n,m)) * sum over all m-subsets of h. Parallel over leading index,
// reduced in deterministic order.
double u_statistic(const Sample& sample, const Kernel& kernel);

// All C(n,m) kernel values, sorted. Fails with BudgetError above the budget.
EmpiricalUDist build_empirical_udist(const Sample& sample, const Kernel& kernel,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

// H_n(t): fraction of kernel values <= t (right-continuous step function).
double h_n(const EmpiricalUDist& dist, double t);

// H_n^{-1}(p) = inf{x : H_n(x) >= p}: sorted value at 1-based index ceil(p*C(n,m)).
double h_n_inverse(const EmpiricalUDist& dist, double p);

namespace serial {
// Single-threaded reference implementations, kept for testing and benchmarks.
double u_statistic(const Sample& sample, const Kernel& kernel);
EmpiricalUDist build_empirical_udist(const Sample& sample, const Kernel& kernel,
                                     std::uint64_t budget = kDefaultEnumerationBudget);
}  // namespace serial

// Finite-support surrogate for F; expectations over it are exact sums.
struct DiscreteLaw {
  std::vector<std::pair<double, double>> atoms;  // (value, probability)

  void validate() const;
};

// Exact Hoeffding decomposition of a kernel under a DiscreteLaw. The g_j are
// lookup tables over j-tuples of support values.
struct HoeffdingDecomposition {
  double theta = 0.0;
  int m = 0;
  std::vector<double> support;            // atom values, ascending
  std::vector<std::vector<double>> g;     // g[j-1] has support.size()^j entries

  // g_j evaluated at j support values (exact match required).
  double g_value(int j, std::span<const double> xs) const;
};

HoeffdingDecomposition hoeffding_decompose(const Kernel& kernel, const DiscreteLaw& law,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

// S_jn = sum over j-subsets of the sample of g_j.
double hoeffding_projection_sum(const Sample& sample, const HoeffdingDecomposition& decomp,
                                int j);

}  // namespace glstat
