#pragma once

#include <Eigen/Core>

namespace szmod {

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
/// Exact for polynomials up to degree 2n - 1.
struct GaussLegendre {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;

  explicit GaussLegendre(int n);

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
      acc += weights[i] * f(mid + half * nodes[i]);
    }
    return half * acc;
  }
};

/// Shared rule cache (rules are immutable once built).
const GaussLegendre& gauss_legendre(int n);

}  // namespace szmod
