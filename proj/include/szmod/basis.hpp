#pragma once

#include <cstdint>

namespace szmod {

/// Fixed (b, x) pair for evaluating the Poisson-type basis
/// s_{b,k}(x) = e^{-bx} (bx)^k / k!  and its x-derivative.
///
/// Evaluation runs in log space (lgamma for the factorial) so that indices in
/// the thousands stay representable. The degenerate point lambda = b*x = 0 is
/// handled exactly: s_{b,0}(0) = 1 and s_{b,k}(0) = 0 for k >= 1.
struct BasisContext {
  double b;           // sequence value, b >= 1
  double x;           // evaluation point, x >= 0
  double lambda;      // b * x
  double log_lambda;  // defined only when lambda > 0

  BasisContext(double b, double x);
};

/// s_{b,k}(x). Always in [0, 1].
double basis_value(const BasisContext& ctx, std::int64_t k);

/// d/dx s_{b,k}(x), via (b/x)(k/b - x) s_{b,k}(x) for x > 0 and the analytic
/// limit at x = 0 (-b, b, 0 for k = 0, 1, >=2).
double basis_derivative(const BasisContext& ctx, std::int64_t k);

/// Magnitude envelope for series weights applied on top of the basis mass:
/// |weight(k)| <= scale * (1 + k/b)^poly_degree * (e^{k/b} if exponential).
/// The default envelope (bounded weights, scale 1) reduces truncation to the
/// plain Poisson tail.
struct GrowthEnvelope {
  double poly_degree = 0.0;
  bool exponential = false;
  double scale = 1.0;
};

/// Smallest index K >= ceil(lambda) past the (envelope-weighted) mode such
/// that the geometric-ratio bound on the remaining envelope-weighted tail
/// falls below tol (a 0.5 safety factor is applied to the bound).
///
/// Throws truncation_error when cap is reached first; the exception carries
/// the bound achieved at the cap.
std::int64_t truncation_index(const BasisContext& ctx, const GrowthEnvelope& env,
                              double tol, std::int64_t cap);

/// Plain Poisson tail cutoff: truncation_index with the unit envelope.
/// Guarantees sum_{k > K} s_{b,k}(x) < tol.
std::int64_t tail_cutoff(const BasisContext& ctx, double tol, std::int64_t cap);

}  // namespace szmod
