#pragma once

namespace glstat {

// Regularized lower incomplete gamma P(a, x).
double regularized_lower_gamma(double a, double x);

// Chi-square distribution with k degrees of freedom.
double chi_square_cdf(int k, double x);
double chi_square_pdf(int k, double x);

// Median M_k of the chi-square distribution, |P(k/2, M_k/2) - 1/2| < 1e-12.
double chi_square_median(int k);

double normal_cdf(double x);
// Inverse standard normal CDF, absolute error below 1e-9.
double normal_inverse(double p);

// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int depth = 48);

namespace detail {
template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || (delta < 15.0 * tol && delta > -15.0 * tol))
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol, int depth) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace glstat
