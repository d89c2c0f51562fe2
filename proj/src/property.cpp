#include "divprod/property.hpp"

#include <gmpxx.h>

#include <numeric>
#include <string>
#include <vector>

#include "divprod/bigcount.hpp"
#include "divprod/errors.hpp"

namespace divprod {

namespace {

using Elements = std::span<const std::uint64_t>;

// Is there a set of at most k elements among elems[start..], skipping
// `pivot_index`, whose product the residual divides?
bool exists_essential(std::uint64_t residual, Elements elems, std::size_t pivot_index,
                      std::size_t start, unsigned k) {
  if (residual == 1) return true;
  if (k == 0) return false;
  for (std::size_t j = start; j < elems.size(); ++j) {
    if (j == pivot_index) continue;
    const std::uint64_t g = std::gcd(residual, elems[j]);
    if (g == 1) continue;
    if (exists_essential(residual / g, elems, pivot_index, j + 1, k - 1)) return true;
  }
  return false;
}

// Necessary condition: the pivot divides the product of all other elements.
bool divides_all_others(Elements elems, std::size_t pivot_index) {
  std::uint64_t residual = elems[pivot_index];
  for (std::size_t j = 0; j < elems.size() && residual != 1; ++j) {
    if (j != pivot_index) residual /= std::gcd(residual, elems[j]);
  }
  return residual == 1;
}

bool pivot_fails(Elements elems, std::size_t pivot_index, unsigned h) {
  if (!divides_all_others(elems, pivot_index)) return false;
  return exists_essential(elems[pivot_index], elems, pivot_index, 0, h);
}

// Smallest sorted h-tuple of cofactors for a pivot known to fail.
std::vector<std::uint64_t> smallest_cofactors(Elements elems, std::size_t pivot_index,
                                              unsigned h) {
  std::vector<std::uint64_t> chosen;
  std::uint64_t residual = elems[pivot_index];
  std::size_t start = 0;
  for (unsigned slot = 0; slot < h; ++slot) {
    const unsigned left_after = h - slot - 1;
    bool placed = false;
    for (std::size_t j = start; j < elems.size(); ++j) {
      if (j == pivot_index) continue;
      const std::uint64_t next = residual / std::gcd(residual, elems[j]);
      std::size_t available = elems.size() - (j + 1);
      if (pivot_index > j) --available;
      if (available < left_after) break;
      if (exists_essential(next, elems, pivot_index, j + 1, left_after)) {
        chosen.push_back(elems[j]);
        residual = next;
        start = j + 1;
        placed = true;
        break;
      }
    }
    if (!placed) throw InternalError("witness reconstruction failed for a failing pivot");
  }
  return chosen;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

struct RsSearch {
  Elements elems;
  unsigned r;
  unsigned s;
  std::vector<bool> used;
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;
  mpz_class left_product;

  bool pick_right(std::size_t start, const mpz_class& product) {
    if (right.size() == s) return mpz_divisible_p(product.get_mpz_t(), left_product.get_mpz_t());
    for (std::size_t j = start; j < elems.size(); ++j) {
      if (used[j]) continue;
      right.push_back(elems[j]);
      if (pick_right(j + 1, product * BigCount(elems[j]).raw())) return true;
      right.pop_back();
    }
    return false;
  }

  bool pick_left(std::size_t start) {
    if (left.size() == r) {
      left_product = 1;
      for (auto v : left) left_product *= BigCount(v).raw();
      return pick_right(0, mpz_class(1));
    }
    for (std::size_t j = start; j < elems.size(); ++j) {
      used[j] = true;
      left.push_back(elems[j]);
      if (pick_left(j + 1)) return true;
      left.pop_back();
      used[j] = false;
    }
    return false;
  }
};

}  // namespace

bool holds_ph(std::span<const std::uint64_t> sorted, unsigned h) {
  if (h < 1) throw InvalidArgument("P_h requires h >= 1");
  if (sorted.size() <= h) return true;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (pivot_fails(sorted, i, h)) return false;
  }
  return true;
}

CheckResult possesses_ph(const IntegerSet& set, unsigned h) {
  if (h < 1) throw InvalidArgument("P_h requires h >= 1");
  const Elements elems = set.elements();
  if (elems.size() <= h) return {};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (!pivot_fails(elems, i, h)) continue;
    Witness w;
    w.left = {elems[i]};
    w.right = smallest_cofactors(elems, i, h);
    return {false, std::move(w)};
  }
  return {};
}

CheckResult possesses_rs(const IntegerSet& set, unsigned r, unsigned s) {
  if (r < 1 || s < 1) throw InvalidArgument("P_{r,s} requires r, s >= 1");
  const Elements elems = set.elements();
  const std::uint64_t m = elems.size();
  if (m < r + s) return {};
  const std::uint64_t lefts = binomial_capped(m, r, kRsTupleCutoff);
  const std::uint64_t rights = binomial_capped(m - r, s, kRsTupleCutoff);
  if (lefts > kRsTupleCutoff || rights > kRsTupleCutoff ||
      static_cast<unsigned __int128>(lefts) * rights > kRsTupleCutoff) {
    throw ResourceLimit("P_{r,s} check on " + std::to_string(m) + " elements exceeds " +
                        std::to_string(kRsTupleCutoff) + " tuple pairs");
  }
  RsSearch search{elems, r, s, std::vector<bool>(m, false), {}, {}, {}};
  if (!search.pick_left(0)) return {};
  return {false, Witness{search.left, search.right}};
}

}  // namespace divprod
