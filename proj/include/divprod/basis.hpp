#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "divprod/arith.hpp"
#include "divprod/integer_set.hpp"

namespace divprod {

// Multiplicative basis of order h for [n]: every m <= n is a product of h
// elements (repeats allowed). 1 is always a member, so "exactly h" and "at
// most h" factors coincide.
class Basis {
 public:
  // Requires 1 in the basis and elements in [1, n]. Coverage (which forces
  // every prime <= n to be present) is checked by verify_coverage.
  Basis(std::uint64_t n, unsigned h, std::vector<std::uint64_t> elements,
        const PrimeTable& table);

  std::uint64_t universe() const noexcept { return n_; }
  unsigned order() const noexcept { return h_; }
  std::span<const std::uint64_t> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool contains(std::uint64_t x) const { return x >= 1 && x <= n_ && member_[x]; }

  // P is the set of primes in (n^{2/(h+1)}/log n, n] (for h = 2: (sqrt n, n]);
  // everything else in the basis is an extra.
  std::uint64_t first_large_prime_bound() const noexcept { return p_first_; }
  bool is_large_prime(std::uint64_t b) const;
  std::vector<std::uint64_t> extras() const;

  bool coverage_verified() const noexcept { return verified_; }
  // Recomputes coverage of [n] by products of h elements and records it.
  bool verify_coverage();

 private:
  std::uint64_t n_;
  unsigned h_;
  std::vector<std::uint64_t> elements_;
  std::vector<bool> member_;
  std::vector<bool> prime_;
  std::uint64_t p_first_;
  bool verified_ = false;
};

// {1} u primes <= n u [2, ceil(n^{2/(h+1)})], then repaired until every
// m <= n is covered: an uncovered m contributes its greedy chunks (prime
// factors accumulated until a chunk exceeds n^{1/(h+1)}), and m itself if
// the chunks are not enough.
Basis build_basis(std::uint64_t n, unsigned h, const PrimeTable& table);

// Memoized test of m in B^k over the divisors of m that lie in B.
class Expressibility {
 public:
  Expressibility(const Basis& basis, const PrimeTable& table);
  bool operator()(std::uint64_t m, unsigned k);

 private:
  const Basis& basis_;
  const PrimeTable& table_;
  std::vector<std::vector<std::int8_t>> memo_;  // [k][m]: -1 unknown
};

bool expressible(std::uint64_t m, const Basis& basis, unsigned k, const PrimeTable& table);

// Divisors of m in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t m, const PrimeTable& table);

struct MatchingCertificate {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;  // (a, b), a increasing
  std::vector<std::uint64_t> unmatched;
  // When unmatched is nonempty: the A-vertices reachable by alternating paths
  // from the first unmatched vertex, and their neighbourhood in B.
  std::vector<std::uint64_t> hall_set;
  std::vector<std::uint64_t> hall_neighbourhood;
};

// Maximum matching of A into B with a -- b iff b | a and a/b in B^{h-1}.
// Requires A subset of [n], a verified basis, and A with P_h; a set failing
// P_h raises PreconditionFailure carrying the witness.
MatchingCertificate verify_injection(const IntegerSet& set, const Basis& basis,
                                     const PrimeTable& table);

// The matching alone, without the basis/P_h preconditions.
MatchingCertificate maximum_matching(const IntegerSet& set, const Basis& basis,
                                     const PrimeTable& table);

// Re-checks injectivity and every pair's divisibility/expressibility.
bool certificate_is_valid(const MatchingCertificate& cert, const IntegerSet& set,
                          const Basis& basis, const PrimeTable& table);

// True when no augmenting path exists from any unmatched vertex.
bool matching_is_maximum(const MatchingCertificate& cert, const IntegerSet& set,
                         const Basis& basis, const PrimeTable& table);

struct ImagePartition {
  IntegerSet mapped_to_primes;  // A_P
  IntegerSet mapped_to_extras;  // A_X
};

ImagePartition partition_by_image(const MatchingCertificate& cert, const Basis& basis);

// Basis file: '# n=.. h=.. size=.. verified=true' then one element per line.
void write_basis(std::ostream& out, const Basis& basis);
// Reads a basis file and re-verifies coverage; throws InvalidArgument if the
// file is malformed or the elements do not cover [n].
Basis read_basis(std::istream& in, const PrimeTable& table);

// Certificate file: 'a b' lines, then '# unmatched: ...'.
void write_certificate(std::ostream& out, const MatchingCertificate& cert);

}  // namespace divprod
