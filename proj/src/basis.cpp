#include "szmod/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "szmod/errors.hpp"

namespace szmod {

namespace {

// exp() underflows to 0 a bit below this; terms this small carry no mass.
constexpr double kLogTiny = -745.0;

double log_basis(double lambda, double log_lambda, std::int64_t k) {
  return -lambda + static_cast<double>(k) * log_lambda -
         std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

BasisContext::BasisContext(double b_in, double x_in) : b(b_in), x(x_in) {
  if (!(b >= 1.0)) {
    throw std::domain_error("BasisContext: b must be >= 1, got " + std::to_string(b));
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("BasisContext: x must be >= 0, got " + std::to_string(x));
  }
  lambda = b * x;
  log_lambda = lambda > 0.0 ? std::log(lambda) : 0.0;
}

double basis_value(const BasisContext& ctx, std::int64_t k) {
  if (k < 0) throw std::domain_error("basis_value: k must be >= 0");
  if (ctx.lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double lt = log_basis(ctx.lambda, ctx.log_lambda, k);
  return lt < kLogTiny ? 0.0 : std::exp(lt);
}

double basis_derivative(const BasisContext& ctx, std::int64_t k) {
  if (k < 0) throw std::domain_error("basis_derivative: k must be >= 0");
  if (ctx.x == 0.0) {
    if (k == 0) return -ctx.b;
    if (k == 1) return ctx.b;
    return 0.0;
  }
  // (x/b) s' = (k/b - x) s, rearranged.
  const double s = basis_value(ctx, k);
  return (ctx.b / ctx.x) * (static_cast<double>(k) / ctx.b - ctx.x) * s;
}

std::int64_t truncation_index(const BasisContext& ctx, const GrowthEnvelope& env,
                              double tol, std::int64_t cap) {
  if (!(tol > 0.0)) throw std::domain_error("truncation_index: tol must be > 0");
  if (cap <= 0) throw std::domain_error("truncation_index: cap must be > 0");
  const double lambda = ctx.lambda;
  if (lambda == 0.0) return 0;

  const double exp_step = env.exponential ? std::exp(1.0 / ctx.b) : 1.0;
  const double log_scale = std::log(std::max(env.scale, 1e-300));

  // Envelope-weighted term magnitude and its one-step growth ratio. The ratio
  // is strictly decreasing in k, so a single geometric bound covers the tail.
  auto log_term = [&](std::int64_t k) {
    double lt = log_basis(lambda, ctx.log_lambda, k) + log_scale;
    const double t = static_cast<double>(k) / ctx.b;
    lt += env.poly_degree * std::log1p(t);
    if (env.exponential) lt += t;
    return lt;
  };
  auto ratio = [&](std::int64_t k) {
    // envelope_term(k+1) / envelope_term(k)
    double r = lambda / (static_cast<double>(k) + 1.0) * exp_step;
    r *= std::pow(1.0 + 1.0 / (ctx.b + static_cast<double>(k)), env.poly_degree);
    return r;
  };

  // Find the envelope-weighted mode: first k with ratio(k) < 1.
  std::int64_t k = std::max<std::int64_t>(0, static_cast<std::int64_t>(lambda * exp_step) - 2);
  while (k < cap && ratio(k) >= 1.0) ++k;

  const std::int64_t floor_k = static_cast<std::int64_t>(std::ceil(lambda));
  k = std::max(k, floor_k);

  const double target = 0.5 * tol;
  double bound = std::numeric_limits<double>::infinity();
  for (; k <= cap; ++k) {
    const double r = ratio(k + 1);
    if (r >= 1.0) continue;
    const double lt = log_term(k + 1);
    bound = (lt < kLogTiny ? 0.0 : std::exp(lt)) / (1.0 - r);
    if (bound < target) return k;
  }
  throw truncation_error(
      "truncation_index: term cap " + std::to_string(cap) +
          " reached before tail tolerance " + std::to_string(tol) +
          " (achieved bound " + std::to_string(bound) + ")",
      bound, cap);
}

std::int64_t tail_cutoff(const BasisContext& ctx, double tol, std::int64_t cap) {
  return truncation_index(ctx, GrowthEnvelope{}, tol, cap);
}

}  // namespace szmod
