#include "szmod/szoperator.hpp"

#include <cmath>
#include <stdexcept>

#include "szmod/errors.hpp"

namespace szmod {

namespace {

constexpr double kLogTiny = -745.0;

struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// sum_{k=0}^{K} s_{b,k}(x) * weight(k). Log-space recurrence for the basis
// term, carried in extended precision and re-anchored on the exact lgamma
// form every 256 steps: the recurrence starts at -lambda, where a plain
// double step would round at ~1e-13 per term.
template <class Weight>
double weighted_basis_sum(const BasisContext& ctx, std::int64_t K, Weight&& weight) {
  if (K < 0) throw std::domain_error("series cutoff must be >= 0");
  if (ctx.lambda == 0.0) return weight(0);
  KahanSum acc;
  const long double log_lambda = std::log(static_cast<long double>(ctx.lambda));
  long double lt = -static_cast<long double>(ctx.lambda);
  for (std::int64_t k = 0; k <= K; ++k) {
    if (k > 0) {
      if ((k & 255) == 0) {
        lt = -static_cast<long double>(ctx.lambda) +
             static_cast<long double>(k) * log_lambda -
             std::lgamma(static_cast<long double>(k) + 1.0L);
      } else {
        lt += log_lambda - std::log(static_cast<long double>(k));
      }
    }
    const double lt_d = static_cast<double>(lt);
    if (lt_d >= kLogTiny) acc.add(std::exp(lt_d) * weight(k));
  }
  return acc.sum;
}

void check_config(const EvalConfig& cfg) {
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0)) {
    throw std::domain_error("EvalConfig.tol must lie in (0, 1)");
  }
  if (cfg.term_cap <= 0) throw std::domain_error("EvalConfig.term_cap must be > 0");
  if (cfg.fixed_k && *cfg.fixed_k < 0) {
    throw std::domain_error("EvalConfig.fixed_k must be >= 0");
  }
}

// Envelope of |f(k/b)| relative to the basis mass, from the declared growth.
GrowthEnvelope function_envelope(const TestFunction& f) {
  GrowthEnvelope env;
  if (f.is_exponential()) {
    env.exponential = true;
  } else {
    env.poly_degree = f.growth_gamma().value_or(0.0);
    env.scale = f.growth_scale();
  }
  return env;
}

std::int64_t resolve_cutoff(const BasisContext& ctx, const GrowthEnvelope& env,
                            const EvalConfig& cfg) {
  if (cfg.fixed_k) return *cfg.fixed_k;
  return truncation_index(ctx, env, cfg.tol, cfg.term_cap);
}

}  // namespace

double apply_b(const TestFunction& f, double b, double x, const EvalConfig& cfg) {
  check_config(cfg);
  const BasisContext ctx(b, x);
  const std::int64_t K = resolve_cutoff(ctx, function_envelope(f), cfg);
  return weighted_basis_sum(ctx, K, [&](std::int64_t k) {
    return f(static_cast<double>(k) / b);
  });
}

double apply(const TestFunction& f, const BnSequence& seq, int n, double x,
             const EvalConfig& cfg) {
  return apply_b(f, seq.value(n), x, cfg);
}

double second_derivative_kernel_b(const TestFunction& f, double b, double x,
                                  const EvalConfig& cfg) {
  check_config(cfg);
  if (!(x > 0.0)) {
    throw std::domain_error("second_derivative_kernel requires x > 0");
  }
  const BasisContext ctx(b, x);
  const double scale = (b / x) * (b / x);

  // |(k/b - x)^2 - k/b^2| <= (1 + k/b)^2 ((1+x)^2 + 1) for b >= 1.
  GrowthEnvelope env = function_envelope(f);
  env.poly_degree += 2.0;
  env.scale *= ((1.0 + x) * (1.0 + x) + 1.0) * scale;

  const std::int64_t K = resolve_cutoff(ctx, env, cfg);
  return scale * weighted_basis_sum(ctx, K, [&](std::int64_t k) {
    const double node = static_cast<double>(k) / b;
    const double kernel = (node - x) * (node - x) - static_cast<double>(k) / (b * b);
    return kernel * f(node);
  });
}

double second_derivative_kernel(const TestFunction& f, const BnSequence& seq, int n,
                                double x, const EvalConfig& cfg) {
  return second_derivative_kernel_b(f, seq.value(n), x, cfg);
}

double second_derivative_differences_b(const TestFunction& f, double b, double x,
                                       const EvalConfig& cfg) {
  check_config(cfg);
  const BasisContext ctx(b, x);

  GrowthEnvelope env = function_envelope(f);
  if (env.exponential) {
    const double step = std::expm1(1.0 / b);  // |d2 e^t| = e^{k/b} (e^{1/b}-1)^2
    env.scale *= b * b * step * step;
  } else {
    env.scale *= 4.0 * b * b * std::pow(1.0 + 2.0 / b, env.poly_degree);
  }

  const std::int64_t K = resolve_cutoff(ctx, env, cfg);
  const double h = 1.0 / b;
  return b * b * weighted_basis_sum(ctx, K, [&](std::int64_t k) {
    const double t = static_cast<double>(k) / b;
    return f(t + 2.0 * h) - 2.0 * f(t + h) + f(t);
  });
}

double second_derivative_differences(const TestFunction& f, const BnSequence& seq, int n,
                                     double x, const EvalConfig& cfg) {
  return second_derivative_differences_b(f, seq.value(n), x, cfg);
}

Eigen::ArrayXd apply_grid(const TestFunction& f, double b, const Eigen::ArrayXd& xs,
                          const EvalConfig& cfg) {
  Eigen::ArrayXd out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = apply_b(f, b, xs[i], cfg);
  return out;
}

}  // namespace szmod
