#include "glstat/empirical_u.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glstat/errors.hpp"

namespace glstat {

void Sample::validate() const {
  if (values.empty()) throw std::invalid_argument("Sample: n must be >= 1");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("Sample: values must be finite");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  if (m > n - m) m = n - m;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    r = r * (n - m + i) / i;  // running value is C(n-m+i, i), division exact
    if (r > (unsigned __int128)1 << 63)
      throw std::overflow_error("binomial: value exceeds 2^63");
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

void check_preconditions(const Sample& sample, const Kernel& kernel) {
  sample.validate();
  if (kernel.m < 1) throw std::invalid_argument("kernel dimension must be >= 1");
  if (sample.n() < static_cast<std::size_t>(kernel.m))
    throw std::invalid_argument("insufficient sample: n < m");
}

// Kernel values with leading index i1, appended to out in lexicographic order.
void enumerate_with_leading(const Sample& sample, const Kernel& kernel, int i1, double* out) {
  int n = static_cast<int>(sample.n());
  int m = kernel.m;
  std::vector<double> args(static_cast<std::size_t>(m));
  args[0] = sample.values[static_cast<std::size_t>(i1)];
  std::span<const double> view(args.data(), args.size());
  if (m == 1) {
    out[0] = kernel.eval(view);
    return;
  }
  int rest = n - i1 - 1;
  std::size_t pos = 0;
  for_each_combination(rest, m - 1, [&](std::span<const int> idx) {
    for (int k = 0; k < m - 1; ++k)
      args[static_cast<std::size_t>(k) + 1] = sample.values[static_cast<std::size_t>(i1 + 1 + idx[k])];
    out[pos++] = kernel.eval(view);
  });
}

}  // namespace

double u_statistic(const Sample& sample, const Kernel& kernel) {
  check_preconditions(sample, kernel);
  int n = static_cast<int>(sample.n());
  int m = kernel.m;
  std::uint64_t total = binomial(n, m);
  // Per-leading-index partial sums, reduced in index order for determinism.
  std::vector<double> partial(static_cast<std::size_t>(n - m + 1), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int i1 = 0; i1 <= n - m; ++i1) {
    std::vector<double> args(static_cast<std::size_t>(m));
    args[0] = sample.values[static_cast<std::size_t>(i1)];
    std::span<const double> view(args.data(), args.size());
    double s = 0.0;
    if (m == 1) {
      s = kernel.eval(view);
    } else {
      for_each_combination(n - i1 - 1, m - 1, [&](std::span<const int> idx) {
        for (int k = 0; k < m - 1; ++k)
          args[static_cast<std::size_t>(k) + 1] =
              sample.values[static_cast<std::size_t>(i1 + 1 + idx[k])];
        s += kernel.eval(view);
      });
    }
    partial[static_cast<std::size_t>(i1)] = s;
  }
  double sum = 0.0;
  for (double s : partial) sum += s;
  return sum / static_cast<double>(total);
}

EmpiricalUDist build_empirical_udist(const Sample& sample, const Kernel& kernel,
                                     std::uint64_t budget) {
  check_preconditions(sample, kernel);
  int n = static_cast<int>(sample.n());
  int m = kernel.m;
  std::uint64_t total = binomial(n, m);
  if (total > budget) throw BudgetError(total, budget);

  EmpiricalUDist dist;
  dist.n = n;
  dist.m = m;
  dist.kernel_values.resize(total);

  // Offset of the block of combinations starting with i1.
  std::vector<std::uint64_t> offset(static_cast<std::size_t>(n - m + 2), 0);
  for (int i1 = 0; i1 <= n - m; ++i1)
    offset[static_cast<std::size_t>(i1) + 1] =
        offset[static_cast<std::size_t>(i1)] + binomial(n - i1 - 1, m - 1);

#pragma omp parallel for schedule(dynamic)
  for (int i1 = 0; i1 <= n - m; ++i1)
    enumerate_with_leading(sample, kernel, i1,
                           dist.kernel_values.data() + offset[static_cast<std::size_t>(i1)]);

  std::sort(dist.kernel_values.begin(), dist.kernel_values.end());
  return dist;
}

double h_n(const EmpiricalUDist& dist, double t) {
  const auto& v = dist.kernel_values;
  if (v.empty()) throw std::invalid_argument("h_n: empty distribution");
  auto it = std::upper_bound(v.begin(), v.end(), t);
  return static_cast<double>(it - v.begin()) / static_cast<double>(v.size());
}

double h_n_inverse(const EmpiricalUDist& dist, double p) {
  const auto& v = dist.kernel_values;
  if (v.empty()) throw std::invalid_argument("h_n_inverse: empty distribution");
  if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("h_n_inverse: p must be in (0,1]");
  double pn = p * static_cast<double>(v.size());
  // Guard against rounding in the product when p*N is an exact integer.
  auto k = static_cast<std::uint64_t>(std::ceil(pn - 16.0 * pn * 2.2e-16));
  if (k < 1) k = 1;
  if (k > v.size()) k = v.size();
  return v[k - 1];
}

namespace serial {

double u_statistic(const Sample& sample, const Kernel& kernel) {
  check_preconditions(sample, kernel);
  int n = static_cast<int>(sample.n());
  int m = kernel.m;
  std::vector<double> args(static_cast<std::size_t>(m));
  std::span<const double> view(args.data(), args.size());
  double sum = 0.0;
  std::uint64_t count = 0;
  for_each_combination(n, m, [&](std::span<const int> idx) {
    for (int k = 0; k < m; ++k)
      args[static_cast<std::size_t>(k)] = sample.values[static_cast<std::size_t>(idx[k])];
    sum += kernel.eval(view);
    ++count;
  });
  return sum / static_cast<double>(count);
}

EmpiricalUDist build_empirical_udist(const Sample& sample, const Kernel& kernel,
                                     std::uint64_t budget) {
  check_preconditions(sample, kernel);
  int n = static_cast<int>(sample.n());
  int m = kernel.m;
  std::uint64_t total = binomial(n, m);
  if (total > budget) throw BudgetError(total, budget);
  EmpiricalUDist dist;
  dist.n = n;
  dist.m = m;
  dist.kernel_values.reserve(total);
  std::vector<double> args(static_cast<std::size_t>(m));
  std::span<const double> view(args.data(), args.size());
  for_each_combination(n, m, [&](std::span<const int> idx) {
    for (int k = 0; k < m; ++k)
      args[static_cast<std::size_t>(k)] = sample.values[static_cast<std::size_t>(idx[k])];
    dist.kernel_values.push_back(kernel.eval(view));
  });
  std::sort(dist.kernel_values.begin(), dist.kernel_values.end());
  return dist;
}

}  // namespace serial

void DiscreteLaw::validate() const {
  if (atoms.empty()) throw std::invalid_argument("DiscreteLaw: no atoms");
  double total = 0.0;
  for (const auto& [v, p] : atoms) {
    if (!(p > 0.0)) throw std::invalid_argument("DiscreteLaw: probabilities must be positive");
    if (!std::isfinite(v)) throw std::invalid_argument("DiscreteLaw: values must be finite");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("DiscreteLaw: probabilities must sum to 1");
}

namespace {

// Iterates all tuples in {0,...,s-1}^len, calling f(tuple).
template <typename F>
void for_each_tuple(int s, int len, F&& f) {
  std::vector<int> t(static_cast<std::size_t>(len), 0);
  std::span<const int> view(t.data(), t.size());
  for (;;) {
    f(view);
    int j = len - 1;
    while (j >= 0 && t[static_cast<std::size_t>(j)] == s - 1) {
      t[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
    ++t[static_cast<std::size_t>(j)];
  }
}

std::size_t tuple_index(std::span<const int> t, int s) {
  std::size_t idx = 0;
  for (int v : t) idx = idx * static_cast<std::size_t>(s) + static_cast<std::size_t>(v);
  return idx;
}

}  // namespace

double HoeffdingDecomposition::g_value(int j, std::span<const double> xs) const {
  if (j < 1 || j > m) throw std::invalid_argument("g_value: j out of range");
  if (xs.size() != static_cast<std::size_t>(j))
    throw std::invalid_argument("g_value: wrong arity");
  int s = static_cast<int>(support.size());
  std::size_t idx = 0;
  for (double x : xs) {
    auto it = std::lower_bound(support.begin(), support.end(), x - 1e-12);
    if (it == support.end() || std::fabs(*it - x) > 1e-12)
      throw std::invalid_argument("g_value: value not in the law's support");
    idx = idx * static_cast<std::size_t>(s) +
          static_cast<std::size_t>(it - support.begin());
  }
  return g[static_cast<std::size_t>(j) - 1][idx];
}

HoeffdingDecomposition hoeffding_decompose(const Kernel& kernel, const DiscreteLaw& law,
                                           std::uint64_t budget) {
  law.validate();
  int m = kernel.m;
  if (m < 1) throw std::invalid_argument("hoeffding_decompose: kernel dimension must be >= 1");
  int s = static_cast<int>(law.atoms.size());
  double pow_sm = std::pow(static_cast<double>(s), m);
  if (pow_sm > static_cast<double>(budget))
    throw BudgetError(static_cast<std::uint64_t>(pow_sm), budget);

  // Sort atoms by value; keep the probabilities aligned.
  auto atoms = law.atoms;
  std::sort(atoms.begin(), atoms.end());
  HoeffdingDecomposition d;
  d.m = m;
  std::vector<double> prob;
  for (const auto& [v, p] : atoms) {
    d.support.push_back(v);
    prob.push_back(p);
  }

  std::vector<double> args(static_cast<std::size_t>(m));
  std::span<const double> argview(args.data(), args.size());

  // theta = E h(Y_1,...,Y_m)
  double theta = 0.0;
  for_each_tuple(s, m, [&](std::span<const int> t) {
    double w = 1.0;
    for (int k = 0; k < m; ++k) {
      args[static_cast<std::size_t>(k)] = d.support[static_cast<std::size_t>(t[k])];
      w *= prob[static_cast<std::size_t>(t[k])];
    }
    theta += w * kernel.eval(argview);
  });
  d.theta = theta;

  // h~_j tables by exact weighted enumeration over the trailing m-j copies.
  std::vector<std::vector<double>> htilde(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    auto& table = htilde[static_cast<std::size_t>(j) - 1];
    table.assign(static_cast<std::size_t>(std::pow(s, j)), 0.0);
    for_each_tuple(s, j, [&](std::span<const int> head) {
      for (int k = 0; k < j; ++k)
        args[static_cast<std::size_t>(k)] = d.support[static_cast<std::size_t>(head[k])];
      double e = 0.0;
      if (j == m) {
        e = kernel.eval(argview);
      } else {
        for_each_tuple(s, m - j, [&](std::span<const int> tail) {
          double w = 1.0;
          for (int k = 0; k < m - j; ++k) {
            args[static_cast<std::size_t>(j + k)] = d.support[static_cast<std::size_t>(tail[k])];
            w *= prob[static_cast<std::size_t>(tail[k])];
          }
          e += w * kernel.eval(argview);
        });
      }
      table[tuple_index(head, s)] = e - theta;
    });
  }

  // g_j by recursive subtraction of all lower-order terms over sub-positions.
  d.g.resize(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    auto& table = d.g[static_cast<std::size_t>(j) - 1];
    table = htilde[static_cast<std::size_t>(j) - 1];
    if (j == 1) continue;
    for_each_tuple(s, j, [&](std::span<const int> t) {
      double correction = 0.0;
      for (int k = 1; k < j; ++k) {
        for_each_combination(j, k, [&](std::span<const int> pos) {
          std::vector<int> sub(static_cast<std::size_t>(k));
          for (int q = 0; q < k; ++q) sub[static_cast<std::size_t>(q)] = t[pos[q]];
          correction += d.g[static_cast<std::size_t>(k) - 1]
                           [tuple_index(std::span<const int>(sub.data(), sub.size()), s)];
        });
      }
      table[tuple_index(t, s)] -= correction;
    });
  }
  return d;
}

double hoeffding_projection_sum(const Sample& sample, const HoeffdingDecomposition& decomp,
                                int j) {
  sample.validate();
  if (j < 1 || j > decomp.m)
    throw std::invalid_argument("hoeffding_projection_sum: j out of range");
  int n = static_cast<int>(sample.n());
  std::vector<double> args(static_cast<std::size_t>(j));
  double sum = 0.0;
  for_each_combination(n, j, [&](std::span<const int> idx) {
    for (int k = 0; k < j; ++k)
      args[static_cast<std::size_t>(k)] = sample.values[static_cast<std::size_t>(idx[k])];
    sum += decomp.g_value(j, std::span<const double>(args.data(), args.size()));
  });
  return sum;
}

}  // namespace glstat
