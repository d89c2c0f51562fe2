#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "divprod/arith.hpp"
#include "divprod/bigcount.hpp"
#include "divprod/integer_set.hpp"
#include "divprod/rng.hpp"

namespace divprod {

using Triple = std::array<std::uint64_t, 3>;

// 3-uniform hypergraph on primes in which two triples share at most one vertex.
struct LinearHypergraph {
  std::vector<std::uint64_t> vertices;
  std::vector<Triple> triples;
};

bool is_linear(const LinearHypergraph& g);

// Candidate triples above which generation refuses.
inline constexpr std::uint64_t kTripleCutoff = 50'000'000;

// Greedy maximal linear hypergraph: all triples of `vertices` in seeded
// random order, each accepted when none of its pairs is used yet.
LinearHypergraph generate_linear_hypergraph(std::span<const std::uint64_t> vertices,
                                            std::uint64_t seed);
// Vertices are the primes in the open interval (primes_lo, primes_hi).
LinearHypergraph generate_linear_hypergraph(std::uint64_t primes_lo, std::uint64_t primes_hi,
                                            std::uint64_t seed, const PrimeTable& table);

// Primes p with n^{1/3}/2 < p < n^{1/3}, decided as 8p^3 > n and p^3 < n.
std::vector<std::uint64_t> h2_triple_primes(std::uint64_t n, const PrimeTable& table);

enum class CutKind { sqrt_over_log, sqrt, explicit_lower };

// Lower end of the large-prime interval I = (lower, n].
struct Cut {
  CutKind kind = CutKind::sqrt_over_log;
  double lower = 0;  // used by explicit_lower

  static Cut parse(const std::string& text);  // "sqrt-over-log", "sqrt", or a number
};

struct FamilySpec {
  std::uint64_t n = 0;
  unsigned h = 3;
  Cut cut;
  std::uint64_t seed = kDefaultSeed;
};

// Integer view of I: p is in I iff first <= p <= n.
struct PrimeInterval {
  double lower = 0;         // real lower end
  std::uint64_t first = 0;  // smallest integer above `lower`
  std::uint64_t n = 0;
  // Distance from `lower` to the nearest integer, for auditing the boundary.
  double boundary_margin = 0;

  bool contains(std::uint64_t p) const { return p >= first && p <= n; }
};

PrimeInterval resolve_interval(const FamilySpec& spec);
std::string describe_cut(const FamilySpec& spec);

// Prime -> chosen multiple; primes absent from the map choose "none".
using Choices = std::map<std::uint64_t, std::uint64_t>;

// A1 u A2: A1 takes at most one multiple of each prime p in (sqrt n, n],
// A2 the products of the triples of g. The result is checked for P_2.
IntegerSet construct_h2(std::uint64_t n, const Choices& a1_choices, const LinearHypergraph& g,
                        const PrimeTable& table);

// prod over primes sqrt(n) < p <= n of (number of multiples of p up to n, plus one),
// counting multiples directly.
BigCount count_a1_families(std::uint64_t n, const PrimeTable& table);

// Every valid A1 set at n, in a fixed order. Throws ResourceLimit above `cap` sets.
std::vector<IntegerSet> all_a1_families(std::uint64_t n, const PrimeTable& table,
                                        std::uint64_t cap = 1'000'000);

Choices random_a1_choices(std::uint64_t n, const PrimeTable& table, Rng& rng);

// Elements whose only distinct prime in I is p, grouped by p (primes increasing).
struct AdmissibleMultiples {
  PrimeInterval interval;
  std::vector<std::uint64_t> primes;
  std::vector<std::vector<std::uint64_t>> multiples;
};

AdmissibleMultiples h3plus_admissible(const FamilySpec& spec, const PrimeTable& table);

// c_p for every prime p in I (same order as the interval's primes), by one
// sieve pass marking the I-primes of each m <= n.
struct ChoiceCounts {
  PrimeInterval interval;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> counts;
};

ChoiceCounts h3plus_choice_counts(const FamilySpec& spec, const PrimeTable& table);

// prod over p in I of (c_p + 1).
BigCount count_h3plus_families(const FamilySpec& spec, const PrimeTable& table);

// Union of the chosen elements; each must have p as its unique distinct prime
// in I. The result is checked for P_h with h = spec.h.
IntegerSet construct_h3plus(const FamilySpec& spec, const Choices& choices,
                            const PrimeTable& table);

Choices random_h3plus_choices(const AdmissibleMultiples& admissible, Rng& rng);

// Family file: '# n=.. h=.. seed=.. cut=..' header, then one element per line.
void write_family(std::ostream& out, const FamilySpec& spec, const IntegerSet& family);
// One triple per line, three space-separated primes.
void write_hypergraph(std::ostream& out, const LinearHypergraph& g);

}  // namespace divprod
