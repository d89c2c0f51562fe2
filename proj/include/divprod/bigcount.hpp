#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>

namespace divprod {

// Exact nonnegative integer for counts and products. Backed by GMP.
class BigCount {
 public:
  BigCount() : value_(0) {}
  BigCount(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit BigCount(mpz_class v);

  static BigCount pow2(std::uint64_t exponent);
  static BigCount from_decimal(const std::string& digits);

  // Product of many machine-word factors. Factors are packed into words and
  // combined with a balanced product tree.
  static BigCount product(std::span<const std::uint64_t> factors);
  static BigCount product(std::span<const BigCount> factors);

  std::string to_string() const { return value_.get_str(10); }
  std::size_t bit_length() const;
  bool is_zero() const { return value_ == 0; }
  bool fits_u64() const;
  std::uint64_t to_u64() const;

  // Natural logarithm from the mantissa/exponent split; -inf for zero.
  double log() const;

  const mpz_class& raw() const noexcept { return value_; }

  BigCount& operator+=(const BigCount& o) { value_ += o.value_; return *this; }
  BigCount& operator-=(const BigCount& o);
  BigCount& operator*=(const BigCount& o) { value_ *= o.value_; return *this; }
  friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
  friend BigCount operator-(BigCount a, const BigCount& b) { return a -= b; }
  friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }
  friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
  friend bool operator<(const BigCount& a, const BigCount& b) { return a.value_ < b.value_; }
  friend bool operator<=(const BigCount& a, const BigCount& b) { return a.value_ <= b.value_; }

 private:
  mpz_class value_;
};

std::ostream& operator<<(std::ostream& out, const BigCount& c);

}  // namespace divprod
