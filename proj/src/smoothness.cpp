#include "szmod/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "szmod/fit.hpp"
#include "szmod/quadrature.hpp"

namespace szmod {

double WeightedSpace::weight(double x) const {
  if (weight_order == 0) return 1.0;
  double p = 1.0;
  for (int i = 0; i < weight_order; ++i) p *= x;
  return 1.0 / (1.0 + p);
}

Eigen::ArrayXd WeightedSpace::grid() const {
  if (grid_points < 2) throw std::domain_error("WeightedSpace needs >= 2 grid points");
  if (!(x_max > 0.0)) throw std::domain_error("WeightedSpace needs x_max > 0");
  return Eigen::ArrayXd::LinSpaced(grid_points, 0.0, x_max);
}

double weighted_norm(const std::function<double(double)>& f, const WeightedSpace& space) {
  const Eigen::ArrayXd xs = space.grid();
  double best = 0.0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    best = std::max(best, space.weight(xs[i]) * std::abs(f(xs[i])));
  }
  return best;
}

double weighted_norm(const TestFunction& f, const WeightedSpace& space) {
  return weighted_norm([&](double x) { return f(x); }, space);
}

namespace {

// Sup of w(x)|difference at scale h| over the global grid plus a local scan
// around each corner of f, stepping h/16 so the peak of the difference
// profile (x = c - h for second differences) lands on a sample.
template <class Diff>
double sup_weighted_difference(const TestFunction& f, const WeightedSpace& space,
                               const Eigen::ArrayXd& xs, double h, double reach,
                               Diff&& diff) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    best = std::max(best, space.weight(xs[i]) * std::abs(diff(xs[i], h)));
  }
  const double step = h / 16.0;
  for (double c : f.kink_points()) {
    const double lo = c - (reach + 0.5) * h;
    for (int j = 0; j <= 16 * (static_cast<int>(reach) + 1); ++j) {
      const double x = lo + j * step;
      if (x < 0.0 || x > space.x_max) continue;
      best = std::max(best, space.weight(x) * std::abs(diff(x, h)));
    }
  }
  return best;
}

ModulusEstimate modulus_impl(const TestFunction& f, const WeightedSpace& space,
                             double delta, int h_samples, int order) {
  if (!(delta > 0.0)) throw std::domain_error("modulus requires delta > 0");
  if (h_samples < 1) throw std::domain_error("modulus requires h_samples >= 1");
  const Eigen::ArrayXd xs = space.grid();

  auto diff1 = [&](double x, double h) { return f(x + h) - f(x); };
  auto diff2 = [&](double x, double h) { return f(x + 2.0 * h) - 2.0 * f(x + h) + f(x); };

  double best = 0.0;
  for (int i = 1; i <= h_samples; ++i) {
    const double h = delta * static_cast<double>(i) / static_cast<double>(h_samples);
    const double v = order == 1
                         ? sup_weighted_difference(f, space, xs, h, 1.0, diff1)
                         : sup_weighted_difference(f, space, xs, h, 2.0, diff2);
    best = std::max(best, v);
  }

  ModulusEstimate est;
  est.delta = delta;
  est.value = best;
  est.h_samples = h_samples;
  est.kind = order == 1 ? ModulusKind::omega1
                        : (space.weight_order == 0 ? ModulusKind::omega2
                                                   : ModulusKind::omega2_weighted);
  return est;
}

}  // namespace

ModulusEstimate modulus1(const TestFunction& f, const WeightedSpace& space, double delta,
                         int h_samples) {
  return modulus_impl(f, space, delta, h_samples, 1);
}

ModulusEstimate modulus2(const TestFunction& f, const WeightedSpace& space, double delta,
                         int h_samples) {
  return modulus_impl(f, space, delta, h_samples, 2);
}

double steklov_mean(const TestFunction& f, double h, double x, int quad_points) {
  if (!(h > 0.0)) throw std::domain_error("steklov_mean requires h > 0");
  if (quad_points < 1) throw std::domain_error("steklov_mean requires quad_points >= 1");
  const double a = 0.5 * h;
  const double scale = (2.0 / h) * (2.0 / h);
  const auto& gl = gauss_legendre(quad_points);

  // Corner preimages in u = s + t: f(x+u) kinks at u = c - x, f(x+2u) at (c-x)/2.
  std::vector<double> cuts;
  for (double c : f.kink_points()) {
    for (double u : {c - x, 0.5 * (c - x)}) {
      if (u > 0.0 && u < 2.0 * a) cuts.push_back(u);
    }
  }

  if (cuts.empty()) {
    double acc = 0.0;
    const double mid = 0.5 * a;
    for (Eigen::Index i = 0; i < gl.nodes.size(); ++i) {
      const double s = mid + mid * gl.nodes[i];
      for (Eigen::Index j = 0; j < gl.nodes.size(); ++j) {
        const double t = mid + mid * gl.nodes[j];
        acc += gl.weights[i] * gl.weights[j] * (2.0 * f(x + s + t) - f(x + 2.0 * (s + t)));
      }
    }
    return scale * acc * mid * mid;
  }

  // The integrand depends on s, t only through u = s + t; collapsing to the
  // diagonal density min(u, 2a - u) makes the kink splits one-dimensional.
  cuts.push_back(a);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double u) {
    return (2.0 * f(x + u) - f(x + 2.0 * u)) * std::min(u, 2.0 * a - u);
  };
  double acc = 0.0;
  double lo = 0.0;
  for (double cut : cuts) {
    acc += gl.integrate(integrand, lo, cut);
    lo = cut;
  }
  acc += gl.integrate(integrand, lo, 2.0 * a);
  return scale * acc;
}

double steklov_second_derivative(const TestFunction& f, double h, double x) {
  if (!(h > 0.0)) throw std::domain_error("steklov_second_derivative requires h > 0");
  const double half = 0.5 * h;
  const double d2_half = f(x + 2.0 * half) - 2.0 * f(x + half) + f(x);
  const double d2_full = f(x + 2.0 * h) - 2.0 * f(x + h) + f(x);
  return (8.0 * d2_half - d2_full) / (h * h);
}

double k_functional_upper(const TestFunction& f, const WeightedSpace& space, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("k_functional_upper requires delta > 0");
  const Eigen::ArrayXd xs = space.grid();
  const double root = std::sqrt(delta);

  std::vector<double> ladder;
  const double lo = std::max(root * 1e-2, 1e-8);
  const double hi = root * 1e2;
  const int per_decade = 20;
  const int steps = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
  for (int i = 0; i <= steps; ++i) {
    ladder.push_back(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
  }
  ladder.push_back(root);

  double best = std::numeric_limits<double>::infinity();
  for (double h : ladder) {
    double dist = 0.0;
    double curvature = 0.0;
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
      const double w = space.weight(xs[i]);
      dist = std::max(dist, w * std::abs(f(xs[i]) - steklov_mean(f, h, xs[i])));
      curvature = std::max(curvature, w * std::abs(steklov_second_derivative(f, h, xs[i])));
    }
    best = std::min(best, dist + delta * curvature);
  }
  return best;
}

LipschitzFit lipschitz_alpha_estimate(const TestFunction& f, const WeightedSpace& space,
                                      const std::vector<double>& deltas, int h_samples) {
  if (deltas.size() < 3) throw std::domain_error("lipschitz fit needs >= 3 deltas");
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i] < deltas[i - 1])) {
      throw std::domain_error("lipschitz fit deltas must be strictly decreasing");
    }
  }

  constexpr double kFloor = 1e-14;
  LipschitzFit fit;
  Eigen::ArrayXd logd(static_cast<Eigen::Index>(deltas.size()));
  Eigen::ArrayXd logm(static_cast<Eigen::Index>(deltas.size()));
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double m = modulus2(f, space, deltas[i], h_samples).value;
    if (m < kFloor) {
      fit.saturated = true;
      fit.alpha = std::numeric_limits<double>::quiet_NaN();
      fit.points_used = static_cast<int>(i);
      return fit;
    }
    logd[static_cast<Eigen::Index>(i)] = std::log(deltas[i]);
    logm[static_cast<Eigen::Index>(i)] = std::log(m);
  }

  fit.alpha = least_squares_line(logd, logm).slope;
  fit.points_used = static_cast<int>(deltas.size());
  return fit;
}

}  // namespace szmod
