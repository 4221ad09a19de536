#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glstat {

// Enumeration would exceed the configured budget of kernel evaluations.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(unsigned long long required, unsigned long long budget)
      : std::runtime_error("enumeration budget exceeded: need " +
                           std::to_string(required) + " kernel evaluations, budget is " +
                           std::to_string(budget)),
        required_(required),
        budget_(budget) {}
  unsigned long long required() const { return required_; }
  unsigned long long budget() const { return budget_; }

 private:
  unsigned long long required_;
  unsigned long long budget_;
};

// Kernel denominator is identically zero (all inputs equal).
class DegenerateKernelError : public std::domain_error {
 public:
  explicit DegenerateKernelError(const std::string& what) : std::domain_error(what) {}
};

// An estimator failed on one subsampling window; the index is reported.
class WindowEstimateError : public std::runtime_error {
 public:
  WindowEstimateError(std::size_t window_index, const std::string& cause)
      : std::runtime_error("estimator failed on window " + std::to_string(window_index) +
                           ": " + cause),
        window_index_(window_index) {}
  std::size_t window_index() const { return window_index_; }

 private:
  std::size_t window_index_;
};

}  // namespace glstat
