#include "szmod/moments.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace szmod {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  BigInt result(1);
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

MomentTable::MomentTable(int r_max) : r_max_(r_max) {
  if (r_max < 1) throw std::domain_error("MomentTable requires r_max >= 1");
  rows_.reserve(static_cast<std::size_t>(r_max_));
  rows_.push_back({BigInt(1)});  // a_{1,1}
  for (int r = 1; r < r_max_; ++r) {
    const auto& prev = rows_.back();
    std::vector<BigInt> next(static_cast<std::size_t>(r) + 1);
    for (int j = 1; j <= r + 1; ++j) {
      // a_{r+1,j} = j a_{r,j} + a_{r,j-1}, with out-of-range entries zero.
      BigInt v(0);
      if (j <= r) v += j * prev[static_cast<std::size_t>(j) - 1];
      if (j >= 2 && j - 1 <= r) v += prev[static_cast<std::size_t>(j) - 2];
      next[static_cast<std::size_t>(j) - 1] = std::move(v);
    }
    rows_.push_back(std::move(next));
  }
}

const BigInt& MomentTable::coefficient(int r, int j) const {
  if (r < 1 || r > r_max_ || j < 1 || j > r) {
    throw std::out_of_range("MomentTable::coefficient(" + std::to_string(r) + ", " +
                            std::to_string(j) + ") outside 1 <= j <= r <= " +
                            std::to_string(r_max_));
  }
  return rows_[static_cast<std::size_t>(r) - 1][static_cast<std::size_t>(j) - 1];
}

bool MomentTable::coefficient_identity(int N) const {
  if (N < 2 || N > r_max_ - 2) {
    throw std::out_of_range("coefficient_identity requires 2 <= N <= r_max - 2");
  }
  const BigInt lhs =
      coefficient(N + 2, N + 1) - 2 * coefficient(N + 1, N) + coefficient(N, N - 1);
  return lhs == 1;
}

MomentPolynomial MomentTable::polynomial(int r) const {
  check_order(r, 1);
  MomentPolynomial poly;
  poly.degree = r;
  poly.terms.reserve(static_cast<std::size_t>(r));
  for (int j = 1; j <= r; ++j) {
    poly.terms.push_back({j, coefficient(r, j), j - r});
  }
  return poly;
}

void MomentTable::check_order(int r, int lo) const {
  if (r < lo || r > r_max_) {
    throw std::out_of_range("moment order " + std::to_string(r) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(r_max_) + "]");
  }
}

void MomentTable::write_csv(std::ostream& os) const {
  os << "r";
  for (int j = 1; j <= r_max_; ++j) os << ",a_" << j;
  os << "\n";
  for (int r = 1; r <= r_max_; ++r) {
    os << r;
    for (int j = 1; j <= r_max_; ++j) {
      os << ',';
      if (j <= r) {
        os << coefficient(r, j);
      } else {
        os << 0;
      }
    }
    os << "\n";
  }
}

}  // namespace szmod
