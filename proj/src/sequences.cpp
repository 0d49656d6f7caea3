#include "szmod/sequences.hpp"

#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "szmod/errors.hpp"

namespace szmod {

struct BnSequence::PsumCache {
  std::mutex mu;
  std::vector<double> partial;  // partial[i] = sum_{N=1}^{i+1} N^{-p}
};

BnSequence::BnSequence(Family f, double param, std::vector<double> values)
    : family_(f), param_(param), table_(std::move(values)) {
  if (family_ == Family::partial_sum_inverse_power) {
    psum_ = std::make_shared<PsumCache>();
  }
}

BnSequence BnSequence::classical() { return BnSequence(Family::classical, 0.0, {}); }

BnSequence BnSequence::power(double m) {
  if (!(m >= 1.0)) throw std::domain_error("power sequence requires m >= 1");
  return BnSequence(Family::power, m, {});
}

BnSequence BnSequence::geometric(double r) {
  if (!(r > 1.0)) throw std::domain_error("geometric sequence requires r > 1");
  return BnSequence(Family::geometric, r, {});
}

BnSequence BnSequence::partial_sum_inverse_power(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("psum sequence requires p in [0,1]");
  return BnSequence(Family::partial_sum_inverse_power, p, {});
}

BnSequence BnSequence::table(std::vector<double> values) {
  const SequenceCheck check = validate_values(values);
  if (!check.valid) {
    throw std::domain_error("table sequence rejected: " + check.detail);
  }
  return BnSequence(Family::table, 0.0, std::move(values));
}

double BnSequence::value(int n) const {
  if (n < 1) throw std::domain_error("sequence index n must be >= 1");
  switch (family_) {
    case Family::classical:
      return static_cast<double>(n);
    case Family::power:
      return std::pow(static_cast<double>(n), param_);
    case Family::geometric:
      return std::pow(param_, static_cast<double>(n));
    case Family::partial_sum_inverse_power: {
      std::lock_guard<std::mutex> lock(psum_->mu);
      auto& partial = psum_->partial;
      // Forward summation only; earlier entries are never recomputed.
      while (static_cast<int>(partial.size()) < n) {
        const double next = static_cast<double>(partial.size()) + 1.0;
        const double term = std::pow(next, -param_);
        partial.push_back(partial.empty() ? term : partial.back() + term);
      }
      return partial[static_cast<std::size_t>(n) - 1];
    }
    case Family::table:
      if (n > static_cast<int>(table_.size())) {
        throw std::domain_error("table sequence has no value at index " + std::to_string(n));
      }
      return table_[static_cast<std::size_t>(n) - 1];
  }
  throw std::logic_error("unreachable");
}

SequenceCheck BnSequence::validate(int n_max) const {
  if (n_max < 2) throw std::domain_error("validate requires n_max >= 2");
  if (family_ == Family::table) {
    n_max = std::min(n_max, static_cast<int>(table_.size()));
  }
  SequenceCheck check;
  double prev = value(1);
  if (!(prev >= 1.0)) {
    check.valid = false;
    check.first_violation = 1;
    check.detail = "b_1 < 1";
    return check;
  }
  for (int n = 2; n <= n_max; ++n) {
    const double cur = value(n);
    if (!(cur > prev)) {
      check.valid = false;
      check.first_violation = n;
      check.detail = "not strictly increasing at n = " + std::to_string(n);
      return check;
    }
    if (family_ == Family::partial_sum_inverse_power && cur > static_cast<double>(n)) {
      check.valid = false;
      check.first_violation = n;
      check.detail = "partial sum exceeds n at n = " + std::to_string(n);
      return check;
    }
    prev = cur;
  }
  return check;
}

std::string BnSequence::spec_string() const {
  std::ostringstream os;
  switch (family_) {
    case Family::classical:
      return "classical";
    case Family::power:
      os << "power:" << param_;
      return os.str();
    case Family::geometric:
      os << "geometric:" << param_;
      return os.str();
    case Family::partial_sum_inverse_power:
      os << "psum:" << param_;
      return os.str();
    case Family::table:
      os << "table:";
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i) os << ',';
        os << table_[i];
      }
      return os.str();
  }
  return {};
}

SequenceCheck validate_values(const std::vector<double>& values) {
  SequenceCheck check;
  if (values.empty()) {
    check.valid = false;
    check.first_violation = 1;
    check.detail = "empty value list";
    return check;
  }
  if (!(values[0] >= 1.0)) {
    check.valid = false;
    check.first_violation = 1;
    check.detail = "b_1 < 1";
    return check;
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      check.valid = false;
      check.first_violation = static_cast<int>(i) + 1;
      check.detail = "not strictly increasing at n = " + std::to_string(i + 1);
      return check;
    }
  }
  return check;
}

namespace {

double parse_double(std::string_view text, std::string_view what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(std::string(text), &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error("bad numeric value '" + std::string(text) + "' in " + std::string(what));
  }
}

}  // namespace

BnSequence parse_sequence(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (head == "classical") {
    if (!arg.empty()) throw config_error("classical sequence takes no parameter");
    return BnSequence::classical();
  }
  if (head == "power") return BnSequence::power(parse_double(arg, "power sequence"));
  if (head == "geometric") return BnSequence::geometric(parse_double(arg, "geometric sequence"));
  if (head == "psum") return BnSequence::partial_sum_inverse_power(parse_double(arg, "psum sequence"));
  if (head == "table") {
    std::vector<double> values;
    std::string_view rest = arg;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      values.push_back(parse_double(rest.substr(0, comma), "table sequence"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return BnSequence::table(std::move(values));
  }
  throw config_error("unknown sequence spec '" + std::string(spec) + "'");
}

}  // namespace szmod
