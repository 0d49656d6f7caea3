#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "szmod/basis.hpp"
#include "szmod/sequences.hpp"
#include "szmod/test_function.hpp"

namespace szmod {

/// Truncation control for the operator series.
struct EvalConfig {
  double tol = 1e-12;                    // absolute tail tolerance, in (0, 1)
  std::int64_t term_cap = 1'000'000;     // hard cap on summed terms
  std::optional<std::int64_t> fixed_k;   // when set, sum k = 0..fixed_k inclusive
};

/// S_n(f; x) = sum_k s_{b_n,k}(x) f(k/b_n), truncated either at fixed_k or at
/// a growth-aware tail index guaranteeing absolute error < tol.
double apply(const TestFunction& f, const BnSequence& seq, int n, double x,
             const EvalConfig& cfg = {});

/// Same series with the sequence value supplied directly.
double apply_b(const TestFunction& f, double b, double x, const EvalConfig& cfg = {});

/// Second derivative of x -> S_n(f;x) via the curvature-kernel series
/// (b/x)^2 sum_k [(k/b - x)^2 - k/b^2] f(k/b) s_{b,k}(x). Requires x > 0.
double second_derivative_kernel(const TestFunction& f, const BnSequence& seq, int n,
                                double x, const EvalConfig& cfg = {});
double second_derivative_kernel_b(const TestFunction& f, double b, double x,
                                  const EvalConfig& cfg = {});

/// Second derivative via forward second differences of f at the nodes:
/// b^2 sum_k [f((k+2)/b) - 2 f((k+1)/b) + f(k/b)] s_{b,k}(x). Valid at x >= 0.
double second_derivative_differences(const TestFunction& f, const BnSequence& seq, int n,
                                     double x, const EvalConfig& cfg = {});
double second_derivative_differences_b(const TestFunction& f, double b, double x,
                                       const EvalConfig& cfg = {});

/// Elementwise apply_b over a grid of evaluation points.
Eigen::ArrayXd apply_grid(const TestFunction& f, double b, const Eigen::ArrayXd& xs,
                          const EvalConfig& cfg = {});

}  // namespace szmod
