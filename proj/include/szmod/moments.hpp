#pragma once

#include <iosfwd>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace szmod {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Integer power with negative exponents, generic over double / BigRational.
template <class Scalar>
Scalar pow_int(const Scalar& base, int exponent) {
  if (exponent < 0) return Scalar(1) / pow_int(base, -exponent);
  Scalar result(1);
  Scalar acc = base;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result *= acc;
    if (e > 1) acc *= acc;
  }
  return result;
}

/// Exact binomial coefficient.
BigInt binomial(int n, int k);

template <class Scalar>
Scalar big_to(const BigInt& v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v.template convert_to<double>();
  } else {
    return Scalar(v);
  }
}

/// The monomial image S_n(t^r; x) as an explicit term list: sum over terms of
/// coeff * x^j * b^{b_exponent} with b_exponent = j - r. No constant term.
struct MomentPolynomial {
  struct Term {
    int x_power = 0;
    BigInt coeff;
    int b_exponent = 0;
  };
  int degree = 0;
  std::vector<Term> terms;  // ascending x_power, j = 1..degree

  template <class Scalar>
  Scalar evaluate(const Scalar& x, const Scalar& b) const {
    Scalar acc(0);
    for (const auto& term : terms) {
      acc += big_to<Scalar>(term.coeff) * pow_int(x, term.x_power) *
             pow_int(b, term.b_exponent);
    }
    return acc;
  }
};

/// Triangular table of the positive integer coefficients a_{r,j} in the
/// monomial-image expansion
///
///   S_n(t^r; x) = sum_{j=1}^{r} a_{r,j} x^j b^{j-r},
///
/// generated by a_{r+1,j} = j a_{r,j} + a_{r,j-1} from a_{1,1} = 1. Arbitrary
/// precision: entries exceed 64 bits well before the default order of 64.
class MomentTable {
 public:
  explicit MomentTable(int r_max);

  int r_max() const { return r_max_; }
  const BigInt& coefficient(int r, int j) const;  // 1 <= j <= r <= r_max

  /// a_{N+2,N+1} - 2 a_{N+1,N} + a_{N,N-1} == 1, exactly. Requires
  /// 2 <= N <= r_max - 2.
  bool coefficient_identity(int N) const;

  /// The degree-r image as an explicit term list.
  MomentPolynomial polynomial(int r) const;

  /// S_n(t^r; x) at (x, b). Scalar is double (fast path) or BigRational
  /// (exact path). r = 0 yields 1.
  template <class Scalar>
  Scalar raw_moment(int r, const Scalar& x, const Scalar& b) const {
    check_order(r, 0);
    if (r == 0) return Scalar(1);
    // sum_j a_{r,j} x^j b^{j-r} = b^{-r} * Horner_j(a_{r,j}; lambda), lambda = x b.
    const Scalar lambda = x * b;
    Scalar acc(0);
    for (int j = r; j >= 1; --j) {
      acc = acc * lambda + big_to<Scalar>(coefficient(r, j));
    }
    acc *= lambda;
    return acc * pow_int(b, -r);
  }

  /// Central moment S_n((t-x)^m; x) by binomial expansion over raw moments.
  template <class Scalar>
  Scalar central_moment(int m, const Scalar& x, const Scalar& b) const {
    check_order(m, 0);
    Scalar acc(0);
    for (int i = 0; i <= m; ++i) {
      Scalar term = big_to<Scalar>(binomial(m, i)) * raw_moment(i, x, b);
      term *= pow_int(Scalar(-1) * x, m - i);
      acc += term;
    }
    return acc;
  }

  /// Matrix dump, rows r = 1..r_max, columns j = 1..r_max, zero above the
  /// diagonal; exact decimal integers.
  void write_csv(std::ostream& os) const;

 private:
  void check_order(int r, int lo) const;

  int r_max_;
  std::vector<std::vector<BigInt>> rows_;  // rows_[r-1][j-1] = a_{r,j}
};

}  // namespace szmod
