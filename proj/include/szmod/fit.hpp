#pragma once

#include <Eigen/Core>

namespace szmod {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares line through (xs, ys). Needs >= 2 points.
LineFit least_squares_line(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys);

/// Slope of log(ys) against log(xs); inputs must be positive.
double loglog_slope(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys);

}  // namespace szmod
