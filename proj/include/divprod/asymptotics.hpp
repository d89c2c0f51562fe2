#pragma once

#include <cstdint>

#include "divprod/arith.hpp"
#include "divprod/bigcount.hpp"
#include "divprod/log_value.hpp"

namespace divprod {

// T(n) = prod over primes sqrt(n) < p <= n of (floor(n/p) + 1). The lower end
// is decided exactly as p*p > n.
BigCount tn_exact(std::uint64_t n, const PrimeTable& table);

// Same value regrouped by i = floor(n/p): prod_{i=1}^{isqrt(n)} (i+1)^{m_i},
// where m_i counts primes in (max(sqrt n, n/(i+1)), n/i].
BigCount tn_grouped(std::uint64_t n, const PrimeTable& table);

// log T(n) summed term by term in floating point, without forming T(n).
LogValue log_tn(std::uint64_t n, const PrimeTable& table);

struct AlphaBracket {
  long double low;
  long double high;
};

// low = prod_{i<=terms} (1+1/i)^(1/i), high = low * e^(1/terms); the tail of
// the log-series is at most sum_{i>terms} 1/i^2 <= 1/terms.
AlphaBracket alpha_bracket(std::uint64_t terms);

struct BoundParams {
  double c1 = 1.0;
  double c2 = 2.0;
};

struct Envelope {
  LogValue low;
  LogValue high;
};

// log T(n) + c * n^(2/3) / log n for c = c1, c2. Requires 3 <= n <= limit.
Envelope envelope_h2(std::uint64_t n, const BoundParams& params, const PrimeTable& table);

// log T(n) + sqrt n + {-11, +4} * sqrt(n) log log n / log n. Requires n >= 16.
Envelope envelope_h3plus(std::uint64_t n, const PrimeTable& table);

struct UpperFactorTerms {
  // Open-closed prime intervals (lower, upper] the two products run over.
  double ap2_lower = 0, ap2_upper = 0;
  double ap3_lower = 0, ap3_upper = 0;
  bool ap2_interval_empty = false;
  bool ap3_interval_empty = false;
  LogValue ap2 = LogValue::one();
  LogValue ap3 = LogValue::one();
  // Analytic caps on the logs: 3 sqrt(n)/log n and sqrt(n) + 3 sqrt(n) log log n/log n.
  double ap2_cap = 0;
  double ap3_cap = 0;
  bool ap2_within_cap = true;
  bool ap3_within_cap = true;
};

// Exact logs of the two middle-range products in the h >= 3 upper bound,
// p in (n^{2/(h+1)}/log n, sqrt(n)/log n] and (sqrt(n)/log n, sqrt(n)].
// Empty or inverted intervals give empty products (magnitude 0) and are flagged.
UpperFactorTerms upper_factor_terms(std::uint64_t n, unsigned h, const PrimeTable& table);

// log prod_{i=1}^{isqrt n} (1+1/i)^{pi(n/i)} - log T(n).
double explicit_formula_discrepancy(std::uint64_t n, const PrimeTable& table);

}  // namespace divprod
