#pragma once

// Naive reference implementations used only by tests. Nothing here calls
// into the library's search code.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "divprod/integer_set.hpp"

namespace oracle {

inline mpz_class big(std::uint64_t v) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

// Calls fn(indices) for every k-combination of [0, n) in lexicographic order
// until fn returns true.
template <typename Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Every pivot (ascending), every h-subset of the others (lexicographic),
// exact products.
inline std::optional<divprod::Witness> brute_ph_witness(const std::vector<std::uint64_t>& a,
                                                        unsigned h) {
  for (std::size_t p = 0; p < a.size(); ++p) {
    std::vector<std::uint64_t> others;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != p) others.push_back(a[j]);
    }
    std::optional<divprod::Witness> found;
    for_each_combination(others.size(), h, [&](const std::vector<std::size_t>& idx) {
      mpz_class prod = 1;
      for (auto i : idx) prod *= big(others[i]);
      if (mpz_divisible_p(prod.get_mpz_t(), big(a[p]).get_mpz_t())) {
        divprod::Witness w;
        w.left = {a[p]};
        for (auto i : idx) w.right.push_back(others[i]);
        found = w;
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

inline bool brute_holds(const std::vector<std::uint64_t>& a, unsigned h) {
  return !brute_ph_witness(a, h).has_value();
}

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> distinct_primes(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

// Plain sieve of Eratosthenes.
inline std::vector<bool> eratosthenes(std::uint64_t n) {
  std::vector<bool> prime(n + 1, true);
  prime[0] = false;
  if (n >= 1) prime[1] = false;
  for (std::uint64_t i = 2; i * i <= n; ++i) {
    if (!prime[i]) continue;
    for (std::uint64_t j = i * i; j <= n; j += i) prime[j] = false;
  }
  return prime;
}

inline std::vector<std::uint64_t> subset_of(std::uint64_t mask, std::uint64_t offset = 1) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1) out.push_back(i + offset);
  }
  return out;
}

}  // namespace oracle
