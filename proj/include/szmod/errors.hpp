#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace szmod {

/// Raised when a series cannot reach the requested tail tolerance within the
/// term cap. Carries the best tail bound achieved before giving up.
class truncation_error : public std::runtime_error {
 public:
  truncation_error(std::string what, double achieved_bound, std::int64_t terms_used)
      : std::runtime_error(std::move(what)),
        achieved_bound_(achieved_bound),
        terms_used_(terms_used) {}

  double achieved_bound() const noexcept { return achieved_bound_; }
  std::int64_t terms_used() const noexcept { return terms_used_; }

 private:
  double achieved_bound_;
  std::int64_t terms_used_;
};

/// Raised for malformed experiment configs or spec strings (CLI exit code 2).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace szmod
