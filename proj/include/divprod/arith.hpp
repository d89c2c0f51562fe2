#pragma once

// Prime infrastructure shared by every other module. All logarithms in this
// project are natural logarithms.

#include <cstdint>
#include <span>
#include <vector>

namespace divprod {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

// Smallest-prime-factor table built by a linear sieve. Immutable once
// constructed and safe to share between threads.
class PrimeTable {
 public:
  // Memory is about 8 bytes per integer up to the limit.
  static constexpr std::uint64_t kMaxLimit = 100'000'000;

  // Throws InvalidArgument for limit < 2, ResourceLimit above kMaxLimit.
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  bool is_prime(std::uint64_t m) const;
  std::uint64_t smallest_prime_factor(std::uint64_t m) const;
  // Number of primes <= x, for 0 <= x <= limit.
  std::uint64_t pi(std::uint64_t x) const;
  // Index range [first, last) into primes() of primes p with lo < p <= hi.
  std::pair<std::size_t, std::size_t> prime_range(std::uint64_t lo, std::uint64_t hi) const;

  // Primes strictly increasing; factorize(1) is empty.
  Factorization factorize(std::uint64_t m) const;

 private:
  void require_in_range(std::uint64_t m, const char* what) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> pi_;
};

inline PrimeTable build_table(std::uint64_t limit) { return PrimeTable(limit); }

inline Factorization factorize(std::uint64_t m, const PrimeTable& table) {
  return table.factorize(m);
}

// Sum of 1/q over primes q <= x, accumulated in long double from the largest
// prime down so the big terms are added last.
long double mertens_sum(std::uint64_t x, const PrimeTable& table);

struct PiBoundCheck {
  std::uint64_t pi = 0;
  double lower_bound = 0;  // x/log x + x/(log x)^2
  double upper_bound = 0;  // x/log x + 2x/(log x)^2
  bool lower_holds = false;
  bool upper_holds = false;
};

// Evaluates the two-sided estimate for pi(x) at a single x in [17, limit].
PiBoundCheck check_pi_bounds(std::uint64_t x, const PrimeTable& table);

// floor(sqrt(m)) and floor(cbrt(m)), exact.
std::uint64_t isqrt(std::uint64_t m);
std::uint64_t icbrt(std::uint64_t m);

}  // namespace divprod
