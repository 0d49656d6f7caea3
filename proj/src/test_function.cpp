#include "szmod/test_function.hpp"

#include <cmath>
#include <stdexcept>

#include "szmod/errors.hpp"

namespace szmod {

TestFunction::TestFunction(Kind kind, double param) : kind_(kind), param_(param) {}

TestFunction TestFunction::monomial(int degree) {
  if (degree < 0) throw std::domain_error("monomial degree must be >= 0");
  TestFunction f(Kind::monomial, static_cast<double>(degree));
  f.growth_gamma_ = static_cast<double>(degree);  // t^i <= (1+t)^i
  return f;
}

TestFunction TestFunction::exponential() {
  TestFunction f(Kind::exponential, 0.0);
  f.growth_gamma_ = std::nullopt;  // not in any polynomial weight class
  return f;
}

TestFunction TestFunction::sine() {
  TestFunction f(Kind::sine, 0.0);
  f.growth_gamma_ = 0.0;
  return f;
}

TestFunction TestFunction::abs_shift(double center) {
  TestFunction f(Kind::abs_shift, center);
  f.growth_gamma_ = 1.0;
  f.growth_scale_ = 1.0 + std::abs(center);  // |t - c| <= (1+|c|)(1+t)
  return f;
}

TestFunction TestFunction::custom(std::function<double(double)> fn, double growth_gamma,
                                  double growth_scale) {
  if (!fn) throw std::domain_error("custom function must be callable");
  if (growth_gamma < 0.0) throw std::domain_error("growth_gamma must be >= 0");
  if (!(growth_scale > 0.0)) throw std::domain_error("growth_scale must be > 0");
  TestFunction f(Kind::custom, 0.0);
  f.growth_gamma_ = growth_gamma;
  f.growth_scale_ = growth_scale;
  f.fn_ = std::move(fn);
  return f;
}

double TestFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::monomial: {
      const int degree = static_cast<int>(param_);
      double value = 1.0;
      for (int i = 0; i < degree; ++i) value *= t;
      return value;
    }
    case Kind::exponential:
      return std::exp(t);
    case Kind::sine:
      return std::sin(t);
    case Kind::abs_shift:
      return std::abs(t - param_);
    case Kind::custom:
      return fn_(t);
  }
  throw std::logic_error("unreachable");
}

std::optional<double> TestFunction::second_derivative(double t) const {
  switch (kind_) {
    case Kind::monomial: {
      const int degree = static_cast<int>(param_);
      if (degree < 2) return 0.0;
      double value = static_cast<double>(degree) * (degree - 1.0);
      for (int i = 0; i < degree - 2; ++i) value *= t;
      return value;
    }
    case Kind::exponential:
      return std::exp(t);
    case Kind::sine:
      return -std::sin(t);
    case Kind::abs_shift:
    case Kind::custom:
      return std::nullopt;
  }
  throw std::logic_error("unreachable");
}

std::vector<double> TestFunction::kink_points() const {
  if (kind_ == Kind::abs_shift) return {param_};
  return {};
}

std::string TestFunction::spec_string() const {
  switch (kind_) {
    case Kind::monomial:
      return "monomial:" + std::to_string(static_cast<int>(param_));
    case Kind::exponential:
      return "exp";
    case Kind::sine:
      return "sin";
    case Kind::abs_shift: {
      std::string s = std::to_string(param_);
      return "absshift:" + s;
    }
    case Kind::custom:
      return "custom";
  }
  return {};
}

TestFunction parse_function(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  try {
    if (head == "monomial") return TestFunction::monomial(std::stoi(std::string(arg)));
    if (head == "exp") return TestFunction::exponential();
    if (head == "sin") return TestFunction::sine();
    if (head == "absshift") return TestFunction::abs_shift(std::stod(std::string(arg)));
  } catch (const std::domain_error&) {
    throw;
  } catch (const std::exception&) {
    throw config_error("bad parameter in function spec '" + std::string(spec) + "'");
  }
  throw config_error("unknown function spec '" + std::string(spec) + "'");
}

}  // namespace szmod
