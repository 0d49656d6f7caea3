#include "szmod/fit.hpp"

#include <stdexcept>

#include <Eigen/Dense>

namespace szmod {

LineFit least_squares_line(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::domain_error("least_squares_line needs >= 2 matching points");
  }
  Eigen::MatrixXd design(xs.size(), 2);
  design.col(0) = xs.matrix();
  design.col(1).setOnes();
  const Eigen::Vector2d sol = design.colPivHouseholderQr().solve(ys.matrix());
  return {sol[0], sol[1]};
}

double loglog_slope(const Eigen::ArrayXd& xs, const Eigen::ArrayXd& ys) {
  if ((xs <= 0.0).any() || (ys <= 0.0).any()) {
    throw std::domain_error("loglog_slope needs positive data");
  }
  return least_squares_line(xs.log(), ys.log()).slope;
}

}  // namespace szmod
