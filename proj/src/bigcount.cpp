#include "divprod/bigcount.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "divprod/errors.hpp"

namespace divprod {

namespace {

mpz_class tree_product(std::vector<mpz_class>& items, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return items[lo];
  if (hi - lo == 2) return items[lo] * items[lo + 1];
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_product(items, lo, mid) * tree_product(items, mid, hi);
}

}  // namespace

BigCount::BigCount(std::uint64_t v) {
  // mpz_class has no portable uint64 constructor on every platform.
  mpz_import(value_.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
}

BigCount::BigCount(mpz_class v) : value_(std::move(v)) {
  if (value_ < 0) throw InvalidArgument("BigCount must be nonnegative");
}

BigCount BigCount::pow2(std::uint64_t exponent) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, exponent);
  return BigCount(std::move(v));
}

BigCount BigCount::from_decimal(const std::string& digits) {
  mpz_class v;
  if (digits.empty() || v.set_str(digits, 10) != 0) {
    throw InvalidArgument("not a decimal integer: " + digits);
  }
  return BigCount(std::move(v));
}

BigCount BigCount::product(std::span<const std::uint64_t> factors) {
  std::vector<mpz_class> words;
  words.reserve(factors.size() / 4 + 1);
  unsigned __int128 acc = 1;
  constexpr unsigned __int128 kFlush = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t f : factors) {
    if (f == 0) return BigCount();
    if (acc * f > kFlush) {
      words.emplace_back(BigCount(static_cast<std::uint64_t>(acc)).raw());
      acc = 1;
    }
    acc *= f;
  }
  if (acc != 1 || words.empty()) words.emplace_back(BigCount(static_cast<std::uint64_t>(acc)).raw());
  return BigCount(tree_product(words, 0, words.size()));
}

BigCount BigCount::product(std::span<const BigCount> factors) {
  if (factors.empty()) return BigCount(1);
  std::vector<mpz_class> items;
  items.reserve(factors.size());
  for (const auto& f : factors) items.push_back(f.raw());
  return BigCount(tree_product(items, 0, items.size()));
}

std::size_t BigCount::bit_length() const {
  if (value_ == 0) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

bool BigCount::fits_u64() const { return bit_length() <= 64; }

std::uint64_t BigCount::to_u64() const {
  if (!fits_u64()) throw InvalidArgument("BigCount exceeds 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof out, 0, 0, value_.get_mpz_t());
  return out;
}

double BigCount::log() const {
  if (value_ == 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value_.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

BigCount& BigCount::operator-=(const BigCount& o) {
  if (o.value_ > value_) throw InvalidArgument("BigCount subtraction would go negative");
  value_ -= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& out, const BigCount& c) { return out << c.to_string(); }

}  // namespace divprod
