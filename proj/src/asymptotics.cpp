#include "divprod/asymptotics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "divprod/errors.hpp"

namespace divprod {

namespace {

void require_table(std::uint64_t n, const PrimeTable& table, const char* op) {
  if (n < 1 || n > table.limit()) {
    throw InvalidArgument(std::string(op) + ": n=" + std::to_string(n) +
                          " outside [1, " + std::to_string(table.limit()) + "]");
  }
}

// Sum of log(floor(n/p)+1) over primes p with lower < p <= upper (reals).
double log_product_over(std::uint64_t n, double lower, double upper, const PrimeTable& table) {
  if (!(lower < upper)) return 0.0;
  const auto lo = lower < 0 ? 0 : static_cast<std::uint64_t>(std::floor(lower));
  const auto hi = static_cast<std::uint64_t>(std::floor(upper));
  const auto [first, last] = table.prime_range(lo, hi);
  double sum = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const std::uint64_t p = table.primes()[i];
    if (static_cast<double>(p) <= lower) continue;
    sum += std::log(static_cast<double>(n / p + 1));
  }
  return sum;
}

}  // namespace

BigCount tn_exact(std::uint64_t n, const PrimeTable& table) {
  require_table(n, table, "tn_exact");
  const auto [first, last] = table.prime_range(isqrt(n), n);
  std::vector<std::uint64_t> factors;
  factors.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) factors.push_back(n / table.primes()[i] + 1);
  return BigCount::product(factors);
}

BigCount tn_grouped(std::uint64_t n, const PrimeTable& table) {
  require_table(n, table, "tn_grouped");
  const std::uint64_t root = isqrt(n);
  std::vector<BigCount> powers;
  for (std::uint64_t i = 1; i <= root; ++i) {
    const std::uint64_t above = std::max(root, n / (i + 1));
    const std::uint64_t upto = n / i;
    if (upto <= above) continue;
    const std::uint64_t m = table.pi(upto) - table.pi(above);
    if (m == 0) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), i + 1, m);
    powers.emplace_back(std::move(p));
  }
  return BigCount::product(powers);
}

LogValue log_tn(std::uint64_t n, const PrimeTable& table) {
  require_table(n, table, "log_tn");
  const auto [first, last] = table.prime_range(isqrt(n), n);
  double sum = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    sum += std::log(static_cast<double>(n / table.primes()[i] + 1));
  }
  return {sum};
}

AlphaBracket alpha_bracket(std::uint64_t terms) {
  if (terms < 1) throw InvalidArgument("alpha_bracket needs at least one term");
  long double log_sum = 0.0L;
  for (std::uint64_t i = terms; i >= 1; --i) {
    const long double x = static_cast<long double>(i);
    log_sum += std::log1p(1.0L / x) / x;
  }
  const long double low = std::exp(log_sum);
  return {low, low * std::exp(1.0L / static_cast<long double>(terms))};
}

Envelope envelope_h2(std::uint64_t n, const BoundParams& params, const PrimeTable& table) {
  if (n < 3) throw InvalidArgument("envelope_h2 requires n >= 3");
  if (!(params.c1 > 0) || !(params.c2 > 0) || params.c1 > params.c2) {
    throw InvalidArgument("envelope constants must satisfy 0 < c1 <= c2");
  }
  const double base = log_tn(n, table).magnitude;
  const double x = static_cast<double>(n);
  const double scale = std::cbrt(x * x) / std::log(x);
  return {{base + params.c1 * scale}, {base + params.c2 * scale}};
}

Envelope envelope_h3plus(std::uint64_t n, const PrimeTable& table) {
  if (n < 16) throw InvalidArgument("envelope_h3plus requires n >= 16 (log log n > 0)");
  const double base = log_tn(n, table).magnitude;
  const double x = static_cast<double>(n);
  const double root = std::sqrt(x);
  const double lx = std::log(x);
  const double correction = root * std::log(lx) / lx;
  return {{base + root - 11 * correction}, {base + root + 4 * correction}};
}

UpperFactorTerms upper_factor_terms(std::uint64_t n, unsigned h, const PrimeTable& table) {
  if (n < 16) throw InvalidArgument("upper_factor_terms requires n >= 16");
  if (h < 3) throw InvalidArgument("upper_factor_terms requires h >= 3");
  if (isqrt(n) > table.limit()) {
    throw InvalidArgument("upper_factor_terms: prime table must reach sqrt(n)=" +
                          std::to_string(isqrt(n)));
  }
  const double x = static_cast<double>(n);
  const double lx = std::log(x);
  const double root = std::sqrt(x);
  UpperFactorTerms t;
  t.ap2_lower = std::pow(x, 2.0 / (h + 1)) / lx;
  t.ap2_upper = root / lx;
  t.ap3_lower = root / lx;
  t.ap3_upper = root;
  t.ap2_interval_empty = !(t.ap2_lower < t.ap2_upper);
  t.ap3_interval_empty = !(t.ap3_lower < t.ap3_upper);
  t.ap2 = {log_product_over(n, t.ap2_lower, t.ap2_upper, table)};
  // The upper end sqrt(n) is closed: p <= sqrt(n) iff p <= isqrt(n).
  t.ap3 = {log_product_over(n, t.ap3_lower, static_cast<double>(isqrt(n)), table)};
  t.ap2_cap = 3 * root / lx;
  t.ap3_cap = root + 3 * root * std::log(lx) / lx;
  t.ap2_within_cap = t.ap2.magnitude <= t.ap2_cap;
  t.ap3_within_cap = t.ap3.magnitude <= t.ap3_cap;
  return t;
}

double explicit_formula_discrepancy(std::uint64_t n, const PrimeTable& table) {
  require_table(n, table, "explicit_formula_discrepancy");
  double sum = 0.0;
  for (std::uint64_t i = 1; i <= isqrt(n); ++i) {
    sum += static_cast<double>(table.pi(n / i)) * std::log1p(1.0 / static_cast<double>(i));
  }
  return sum - log_tn(n, table).magnitude;
}

}  // namespace divprod
