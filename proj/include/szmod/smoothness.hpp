#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "szmod/test_function.hpp"

namespace szmod {

/// Polynomial weight space: w_0 = 1, w_N(x) = 1/(1 + x^N) for N >= 1, with
/// the computational window and grid density every supremum is taken over.
/// Suprema over [0, infinity) are replaced by grid suprema over [0, x_max];
/// estimates are therefore lower bounds on the true norms.
struct WeightedSpace {
  int weight_order = 0;
  double x_max = 50.0;
  int grid_points = 4096;  // uniform, both endpoints included

  double weight(double x) const;
  Eigen::ArrayXd grid() const;
};

enum class ModulusKind { omega1, omega2, omega2_weighted };

struct ModulusEstimate {
  double delta = 0.0;
  double value = 0.0;  // grid supremum; lower bound on the true modulus
  ModulusKind kind = ModulusKind::omega2;
  int h_samples = 0;
};

/// sup over the grid of w_N(x) |f(x)|.
double weighted_norm(const std::function<double(double)>& f, const WeightedSpace& space);
double weighted_norm(const TestFunction& f, const WeightedSpace& space);

/// First-order modulus of continuity: sup over h in (0, delta] (sampled) and
/// x on the grid of w_N(x) |f(x+h) - f(x)|.
ModulusEstimate modulus1(const TestFunction& f, const WeightedSpace& space, double delta,
                         int h_samples = 64);

/// Second-order modulus of smoothness: sup of w_N(x) |f(x+2h) - 2f(x+h) + f(x)|
/// over the h-ladder {delta i / h_samples} and the grid. Around corner points
/// of f the x-scan is locally refined at step h/16 so the tent profile of the
/// second difference (peak at x = c - h) is sampled exactly.
ModulusEstimate modulus2(const TestFunction& f, const WeightedSpace& space, double delta,
                         int h_samples = 64);

/// Steklov mean f_h(x) = (2/h)^2 int_0^{h/2} int_0^{h/2}
/// [2 f(x+s+t) - f(x+2(s+t))] ds dt. Tensor Gauss-Legendre with quad_points
/// per axis; when a corner of f crosses the integration square the integral
/// is instead reduced to one dimension and split at the corner preimages, so
/// the quadrature never straddles a kink.
double steklov_mean(const TestFunction& f, double h, double x, int quad_points = 32);

/// f_h''(x) = h^{-2} [8 D2_{h/2} f(x) - D2_h f(x)], exact finite differences.
double steklov_second_derivative(const TestFunction& f, double h, double x);

/// Upper estimate of K_2(f; delta) = inf_g { ||f-g|| + delta ||g''|| } using
/// Steklov candidates g = f_h over a logarithmic h-ladder (20 per decade,
/// sqrt(delta) always included). Norms are window norms of the space.
double k_functional_upper(const TestFunction& f, const WeightedSpace& space, double delta);

struct LipschitzFit {
  bool saturated = false;  // some modulus fell below 1e-14; no slope reported
  double alpha = 0.0;      // log-log slope of modulus2 against delta
  int points_used = 0;
};

/// Least-squares exponent of omega^2_N(f, delta) ~ delta^alpha over the given
/// deltas (>= 3, decreasing).
LipschitzFit lipschitz_alpha_estimate(const TestFunction& f, const WeightedSpace& space,
                                      const std::vector<double>& deltas, int h_samples = 64);

}  // namespace szmod
