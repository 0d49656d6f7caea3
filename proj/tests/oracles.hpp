// Test-only reference implementations, kept independent of the library's
// evaluation paths: high-precision Poisson sums, finite differences, and the
// explicit alternating sum for Stirling numbers of the second kind.
#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace szmod::testing {

using Dec50 = boost::multiprecision::cpp_dec_float_50;
using boost::multiprecision::cpp_int;

/// P(X <= K) for X ~ Poisson(lambda), summed at 50 digits.
inline Dec50 poisson_cdf_50(double lambda, std::int64_t K) {
  const Dec50 lam(lambda);
  Dec50 term = exp(-lam);
  Dec50 sum = term;
  for (std::int64_t k = 1; k <= K; ++k) {
    term *= lam / k;
    sum += term;
  }
  return sum;
}

template <class F>
double central_derivative(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double central_second_derivative(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline cpp_int factorial(int n) {
  cpp_int v = 1;
  for (int i = 2; i <= n; ++i) v *= i;
  return v;
}

inline cpp_int binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int v = 1;
  for (int i = 1; i <= k; ++i) {
    v *= n - k + i;
    v /= i;
  }
  return v;
}

/// S(r, j) = (1/j!) sum_{i=0}^{j} (-1)^i C(j,i) (j-i)^r, exact arithmetic.
inline cpp_int stirling_second_explicit(int r, int j) {
  cpp_int acc = 0;
  for (int i = 0; i <= j; ++i) {
    cpp_int power = 1;
    for (int e = 0; e < r; ++e) power *= j - i;
    const cpp_int term = binomial_exact(j, i) * power;
    acc += (i % 2 == 0) ? term : -term;
  }
  return acc / factorial(j);
}

/// |a - b| <= tol * (1 + |b|).
inline bool mixed_close(double a, double b, double tol) {
  const double diff = a > b ? a - b : b - a;
  const double mag = b >= 0 ? b : -b;
  return diff <= tol * (1.0 + mag);
}

}  // namespace szmod::testing
