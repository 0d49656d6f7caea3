#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace szmod {

/// Outcome of an ordering check over an index range.
struct SequenceCheck {
  bool valid = true;
  int first_violation = 0;  // 1-based index n where the check first failed, 0 if none
  std::string detail;       // human-readable reason, empty when valid
};

/// Admissible driver sequence (b_n): b_1 >= 1, strictly increasing, divergent.
/// Divergence is assumed for the built-in families and unchecked for tables.
///
/// Families: classical (b_n = n), power (n^m, m >= 1), geometric (r^n, r > 1),
/// psum (partial sums of N^{-p}, 0 <= p <= 1), and explicit tables.
class BnSequence {
 public:
  enum class Family { classical, power, geometric, partial_sum_inverse_power, table };

  static BnSequence classical();
  static BnSequence power(double m);
  static BnSequence geometric(double r);
  static BnSequence partial_sum_inverse_power(double p);
  /// Validates b_1 >= 1 and strict increase; throws std::domain_error on violation.
  static BnSequence table(std::vector<double> values);

  /// b_n for n >= 1. Table lookups past the stored range throw std::domain_error.
  double value(int n) const;

  /// Checks b_1 >= 1 and strict increase up to n_max (clamped to the table
  /// length for table sequences); psum families additionally check b_n <= n.
  SequenceCheck validate(int n_max) const;

  Family family() const { return family_; }
  double parameter() const { return param_; }
  /// Spec string in the config grammar, e.g. "psum:0.5".
  std::string spec_string() const;

 private:
  BnSequence(Family f, double param, std::vector<double> values);

  Family family_;
  double param_ = 0.0;
  std::vector<double> table_;
  // Monotone prefix cache for the partial-sum family; grown under a lock so
  // concurrent readers always see a consistent prefix.
  struct PsumCache;
  std::shared_ptr<PsumCache> psum_;
};

/// Ordering check over raw values (b_1 >= 1, strictly increasing).
SequenceCheck validate_values(const std::vector<double>& values);

/// Parses `classical | power:<m> | geometric:<r> | psum:<p> | table:<v1,v2,...>`.
/// Throws config_error on bad syntax, std::domain_error on bad parameters.
BnSequence parse_sequence(std::string_view spec);

}  // namespace szmod
