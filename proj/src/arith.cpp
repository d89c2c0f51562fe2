#include "divprod/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "divprod/errors.hpp"

namespace divprod {

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw InvalidArgument("prime table limit must be >= 2");
  if (limit > kMaxLimit) {
    throw ResourceLimit("prime table limit " + std::to_string(limit) + " exceeds cap " +
                        std::to_string(kMaxLimit));
  }
  spf_.assign(limit + 1, 0);
  primes_.reserve(limit < 100 ? 32 : static_cast<std::size_t>(1.26 * limit / std::log(limit)));
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    // Each composite is struck exactly once, by its smallest prime factor.
    const std::uint32_t lp = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > lp || p * i > limit) break;
      spf_[p * i] = p;
    }
  }
  pi_.assign(limit + 1, 0);
  std::uint32_t count = 0;
  for (std::uint64_t x = 0; x <= limit; ++x) {
    if (x >= 2 && spf_[x] == x) ++count;
    pi_[x] = count;
  }
}

void PrimeTable::require_in_range(std::uint64_t m, const char* what) const {
  if (m < 1 || m > limit_) {
    throw InvalidArgument(std::string(what) + ": " + std::to_string(m) +
                          " outside [1, " + std::to_string(limit_) + "]");
  }
}

bool PrimeTable::is_prime(std::uint64_t m) const {
  require_in_range(std::max<std::uint64_t>(m, 1), "is_prime");
  return m >= 2 && spf_[m] == m;
}

std::uint64_t PrimeTable::smallest_prime_factor(std::uint64_t m) const {
  require_in_range(m, "smallest_prime_factor");
  if (m == 1) throw InvalidArgument("smallest_prime_factor: 1 has no prime factor");
  return spf_[m];
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  if (x > limit_) {
    throw InvalidArgument("pi: " + std::to_string(x) + " exceeds table limit " +
                          std::to_string(limit_));
  }
  return pi_[x];
}

std::pair<std::size_t, std::size_t> PrimeTable::prime_range(std::uint64_t lo,
                                                            std::uint64_t hi) const {
  hi = std::min(hi, limit_);
  if (lo >= hi) return {0, 0};
  return {static_cast<std::size_t>(pi_[lo]), static_cast<std::size_t>(pi_[hi])};
}

Factorization PrimeTable::factorize(std::uint64_t m) const {
  require_in_range(m, "factorize");
  Factorization out;
  while (m > 1) {
    const std::uint32_t p = spf_[m];
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

long double mertens_sum(std::uint64_t x, const PrimeTable& table) {
  if (x < 2 || x > table.limit()) {
    throw InvalidArgument("mertens_sum: x=" + std::to_string(x) + " outside [2, " +
                          std::to_string(table.limit()) + "]");
  }
  const auto primes = table.primes().first(table.pi(x));
  long double sum = 0.0L;
  for (auto it = primes.rbegin(); it != primes.rend(); ++it) sum += 1.0L / *it;
  return sum;
}

PiBoundCheck check_pi_bounds(std::uint64_t x, const PrimeTable& table) {
  if (x < 17 || x > table.limit()) {
    throw InvalidArgument("check_pi_bounds: x=" + std::to_string(x) + " outside [17, " +
                          std::to_string(table.limit()) + "]");
  }
  PiBoundCheck r;
  const double lx = std::log(static_cast<double>(x));
  const double head = x / lx;
  const double tail = x / (lx * lx);
  r.pi = table.pi(x);
  r.lower_bound = head + tail;
  r.upper_bound = head + 2 * tail;
  r.lower_holds = static_cast<double>(r.pi) >= r.lower_bound;
  r.upper_holds = static_cast<double>(r.pi) <= r.upper_bound;
  return r;
}

std::uint64_t isqrt(std::uint64_t m) {
  using Wide = unsigned __int128;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(m)));
  while (r > 0 && Wide(r) * r > m) --r;
  while (Wide(r + 1) * (r + 1) <= m) ++r;
  return r;
}

std::uint64_t icbrt(std::uint64_t m) {
  using Wide = unsigned __int128;
  auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(m)));
  while (r > 0 && Wide(r) * r * r > m) --r;
  while (Wide(r + 1) * (r + 1) * (r + 1) <= m) ++r;
  return r;
}

}  // namespace divprod
