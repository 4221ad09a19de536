// Compares the OpenMP enumeration kernels against the serial reference.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "glstat/empirical_u.hpp"
#include "glstat/gm_pareto.hpp"
#include "glstat/kernels.hpp"
#include "glstat/processes.hpp"

using clock_type = std::chrono::high_resolution_clock;

static double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  glstat::ProcessConfig pc;
  pc.kind = glstat::ProcessKind::iid_pareto;
  pc.pareto = {2.0, 1.0};
  pc.seed = 42;

  struct Case {
    int n;
    int m;
  } cases[] = {{400, 2}, {100, 3}, {100, 4}, {60, 5}};

  std::printf("%8s %4s %14s %12s %12s %8s\n", "n", "m", "C(n,m)", "serial[s]", "parallel[s]",
              "speedup");
  for (const auto& c : cases) {
    pc.n = c.n;
    glstat::Sample sample = glstat::generate(pc);
    glstat::Kernel kernel = glstat::gm_pareto_kernel(c.m);

    auto t0 = clock_type::now();
    auto ref = glstat::serial::build_empirical_udist(sample, kernel);
    double t_serial = seconds_since(t0);

    t0 = clock_type::now();
    auto par = glstat::build_empirical_udist(sample, kernel);
    double t_parallel = seconds_since(t0);

    bool same = ref.kernel_values == par.kernel_values;
    std::printf("%8d %4d %14zu %12.4f %12.4f %7.2fx %s\n", c.n, c.m, par.kernel_values.size(),
                t_serial, t_parallel, t_serial / t_parallel, same ? "" : "MISMATCH");

    // Fast log-precomputing path used by the estimator.
    glstat::GMConfig gm;
    gm.m = c.m;
    t0 = clock_type::now();
    double est = glstat::gm_estimate(sample, gm);
    double t_fast = seconds_since(t0);
    std::printf("%8s %4s %14s %12s %12.4f  gm_estimate=%.6f\n", "", "", "", "", t_fast, est);
  }
  return 0;
}
