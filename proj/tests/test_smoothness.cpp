#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "szmod/quadrature.hpp"
#include "szmod/smoothness.hpp"
#include "szmod/test_function.hpp"
#include "oracles.hpp"

using namespace szmod;

namespace {

WeightedSpace small_space(int weight_order, double x_max = 10.0, int grid_points = 256) {
  WeightedSpace space;
  space.weight_order = weight_order;
  space.x_max = x_max;
  space.grid_points = grid_points;
  return space;
}

}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {2, 8, 32}) {
    const auto& gl = gauss_legendre(n);
    CHECK(gl.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // degree 2n-1 monomial over [0, 1]
    const double p = 2.0 * n - 1.0;
    const double integral = gl.integrate([&](double t) { return std::pow(t, p); }, 0.0, 1.0);
    CHECK(integral == doctest::Approx(1.0 / (p + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("weighted norms") {
  WeightedSpace space;  // defaults: N = 0, [0, 50], 4096 points
  CHECK(weighted_norm(TestFunction::monomial(0), space) == 1.0);
  CHECK(weighted_norm(TestFunction::monomial(1), space) == 50.0);

  space.weight_order = 2;
  CHECK(weighted_norm(TestFunction::monomial(2), space) ==
        doctest::Approx(2500.0 / 2501.0).epsilon(1e-12));
}

TEST_CASE("weighted norm is a norm on sampled values") {
  const auto space = small_space(2);
  const auto f = TestFunction::sine();
  const auto g = TestFunction::abs_shift(1.0);

  // absolute homogeneity with a power-of-two factor is exact
  const auto scaled = TestFunction::custom([&](double t) { return -4.0 * f(t); }, 0.0, 4.0);
  CHECK(weighted_norm(scaled, space) == 4.0 * weighted_norm(f, space));

  const auto sum = TestFunction::custom([&](double t) { return f(t) + g(t); }, 1.0, 3.0);
  CHECK(weighted_norm(sum, space) <=
        weighted_norm(f, space) + weighted_norm(g, space) + 1e-15);
}

TEST_CASE("second-order modulus: exact anchors") {
  const auto space = small_space(0, 50.0, 4096);
  CHECK(modulus2(TestFunction::monomial(1), space, 0.3).value <= 1e-12);
  CHECK(modulus2(TestFunction::monomial(2), space, 0.1).value ==
        doctest::Approx(0.02).epsilon(1e-10));

  // |t - 1| has a tent-shaped second difference with peak 2h at x = 1 - h.
  for (double delta : {0.1, 0.01}) {
    CHECK(modulus2(TestFunction::abs_shift(1.0), space, delta).value ==
          doctest::Approx(2.0 * delta).epsilon(1e-9));
  }
}

TEST_CASE("modulus scaling law and monotonicity") {
  const auto space = small_space(0, 20.0, 2048);
  const auto f = TestFunction::sine();
  for (double lambda : {2.0, 3.7}) {
    for (double delta : {0.05, 0.3}) {
      const double lhs = modulus2(f, space, lambda * delta).value;
      const double rhs = (lambda + 1.0) * (lambda + 1.0) * modulus2(f, space, delta).value;
      CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
  }

  for (const auto& fn :
       {TestFunction::monomial(2), TestFunction::sine(), TestFunction::abs_shift(1.0)}) {
    double prev = 0.0;
    for (double delta : {0.05, 0.1, 0.2, 0.4}) {
      const double v = modulus2(fn, space, delta).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("modulus kinds and first-order modulus") {
  const auto unweighted = small_space(0);
  const auto weighted = small_space(2);
  CHECK(modulus2(TestFunction::sine(), unweighted, 0.1).kind == ModulusKind::omega2);
  CHECK(modulus2(TestFunction::sine(), weighted, 0.1).kind == ModulusKind::omega2_weighted);

  // omega_1 of a line of slope 1 is the step itself.
  CHECK(modulus1(TestFunction::monomial(1), unweighted, 0.25).value ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(modulus1(TestFunction::monomial(1), unweighted, 0.25).kind == ModulusKind::omega1);
}

TEST_CASE("steklov means: affine reproduction and analytic values") {
  CHECK(steklov_mean(TestFunction::monomial(0), 0.4, 1.3) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(steklov_mean(TestFunction::monomial(1), 0.5, 2.0) ==
        doctest::Approx(2.0).epsilon(1e-10));

  // f = t^2: f_h = f - (7/12) h^2; f = t^3: f_h = f - (7/4) x h^2 - (9/8) h^3.
  const double h = 0.2;
  CHECK(steklov_mean(TestFunction::monomial(2), h, 1.0) ==
        doctest::Approx(1.0 - 7.0 / 12.0 * h * h).epsilon(1e-12));
  const double x = 1.7;
  CHECK(steklov_mean(TestFunction::monomial(3), h, x) ==
        doctest::Approx(x * x * x - 1.75 * x * h * h - 1.125 * h * h * h).epsilon(1e-12));
}

TEST_CASE("steklov difference identity against an independent quadrature") {
  // f - f_h = (2/h)^2 int int D2_{s+t} f(x) ds dt, quadratured directly here.
  const auto f = TestFunction::monomial(2);
  const double h = 0.2;
  const double x = 1.0;
  const auto& gl = gauss_legendre(48);
  const double a = 0.5 * h;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < gl.nodes.size(); ++i) {
    const double s = 0.5 * a * (1.0 + gl.nodes[i]);
    for (Eigen::Index j = 0; j < gl.nodes.size(); ++j) {
      const double t = 0.5 * a * (1.0 + gl.nodes[j]);
      const double u = s + t;
      acc += gl.weights[i] * gl.weights[j] * (f(x + 2.0 * u) - 2.0 * f(x + u) + f(x));
    }
  }
  acc *= (0.5 * a) * (0.5 * a) * (2.0 / h) * (2.0 / h);
  CHECK(f(x) - steklov_mean(f, h, x) == doctest::Approx(acc).epsilon(1e-9));
}

TEST_CASE("steklov mean splits cleanly at corners") {
  // Dense midpoint oracle on the collapsed one-dimensional form.
  const auto f = TestFunction::abs_shift(1.0);
  const double h = 0.3;
  const double x = 0.9;
  const double a = 0.5 * h;
  const int cells = 400000;
  long double acc = 0.0L;
  for (int i = 0; i < cells; ++i) {
    const double u = 2.0 * a * (i + 0.5) / cells;
    acc += (2.0 * f(x + u) - f(x + 2.0 * u)) * std::min(u, 2.0 * a - u);
  }
  const double oracle_value =
      static_cast<double>(acc) * (2.0 * a / cells) * (2.0 / h) * (2.0 / h);
  CHECK(steklov_mean(f, h, x) == doctest::Approx(oracle_value).epsilon(1e-9));

  // Smooth integrands take the tensor path; both forms describe one integral.
  const double tensor = steklov_mean(TestFunction::sine(), 0.4, 1.1);
  const auto masked = TestFunction::custom([](double t) { return std::sin(t); }, 0.0, 1.0);
  CHECK(tensor == doctest::Approx(steklov_mean(masked, 0.4, 1.1)).epsilon(1e-13));
}

TEST_CASE("steklov second derivative") {
  CHECK(std::abs(steklov_second_derivative(TestFunction::monomial(1), 0.3, 1.0)) <= 1e-11);
  CHECK(steklov_second_derivative(TestFunction::monomial(2), 0.3, 0.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(steklov_second_derivative(TestFunction::sine(), 0.05, 1.0) ==
        doctest::Approx(-std::sin(1.0)).epsilon(1e-3));
}

TEST_CASE("steklov inequalities bound distance and curvature") {
  for (int N : {0, 2}) {
    const auto space = small_space(N, 50.0, 2048);
    for (const auto& f :
         {TestFunction::sine(), TestFunction::abs_shift(1.0), TestFunction::monomial(3)}) {
      for (double h : {0.5, 0.1, 0.01}) {
        const double omega = modulus2(f, space, h, 64).value;
        const double dist = weighted_norm(
            [&](double x) { return f(x) - steklov_mean(f, h, x, 16); }, space);
        const double curvature = weighted_norm(
            [&](double x) { return steklov_second_derivative(f, h, x); }, space);
        CHECK(dist <= omega * (1.0 + 1e-6));
        CHECK(curvature <= 9.0 / (h * h) * omega * (1.0 + 1e-6));
      }
    }
  }
}

TEST_CASE("k-functional upper estimates") {
  const auto space = small_space(0);
  CHECK(k_functional_upper(TestFunction::monomial(1), space, 0.1) <= 1e-10);

  const double delta = 0.05;
  CHECK(k_functional_upper(TestFunction::monomial(2), space, delta) <= 2.0 * delta + 1e-5);

  // Chain through the Steklov candidate at h = sqrt(delta).
  for (double d : {0.01, 0.25}) {
    const double k = k_functional_upper(TestFunction::sine(), space, d);
    const double omega = modulus2(TestFunction::sine(), space, std::sqrt(d), 64).value;
    CHECK(k <= 10.0 * omega * (1.0 + 1e-6));
  }
}

TEST_CASE("lipschitz exponent estimates") {
  const auto space = small_space(0, 50.0, 4096);

  const auto quadratic =
      lipschitz_alpha_estimate(TestFunction::monomial(2), space, {1e-1, 1e-2, 1e-3, 1e-4});
  CHECK(!quadratic.saturated);
  CHECK(quadratic.alpha == doctest::Approx(2.0).epsilon(0.005));

  const auto kink =
      lipschitz_alpha_estimate(TestFunction::abs_shift(1.0), space, {1e-1, 1e-2, 1e-3});
  CHECK(!kink.saturated);
  CHECK(kink.alpha == doctest::Approx(1.0).epsilon(0.1));

  const auto affine =
      lipschitz_alpha_estimate(TestFunction::monomial(1), space, {1e-1, 1e-2, 1e-3});
  CHECK(affine.saturated);
  CHECK(affine.points_used == 0);
}

TEST_CASE("smoothness domain errors") {
  const auto space = small_space(0);
  CHECK_THROWS_AS(modulus2(TestFunction::sine(), space, 0.0), std::domain_error);
  CHECK_THROWS_AS(steklov_mean(TestFunction::sine(), 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(steklov_second_derivative(TestFunction::sine(), -0.1, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(k_functional_upper(TestFunction::sine(), space, 0.0), std::domain_error);
  CHECK_THROWS_AS(lipschitz_alpha_estimate(TestFunction::sine(), space, {0.1, 0.01}),
                  std::domain_error);
  CHECK_THROWS_AS(lipschitz_alpha_estimate(TestFunction::sine(), space, {0.1, 0.1, 0.01}),
                  std::domain_error);
  WeightedSpace bad;
  bad.grid_points = 1;
  CHECK_THROWS_AS(bad.grid(), std::domain_error);
}
