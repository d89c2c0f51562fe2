#include "divprod/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "divprod/errors.hpp"
#include "divprod/property.hpp"

namespace divprod {

namespace {

void require_table(std::uint64_t n, const PrimeTable& table, const char* op) {
  if (n < 1 || n > table.limit()) {
    throw InvalidArgument(std::string(op) + ": n=" + std::to_string(n) +
                          " outside [1, " + std::to_string(table.limit()) + "]");
  }
}

std::string format_real(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

bool is_linear(const LinearHypergraph& g) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (const auto& t : g.triples) {
    for (auto v : t) {
      if (!std::binary_search(g.vertices.begin(), g.vertices.end(), v)) return false;
    }
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) return false;
    auto s = t;
    std::sort(s.begin(), s.end());
    pairs.emplace_back(s[0], s[1]);
    pairs.emplace_back(s[0], s[2]);
    pairs.emplace_back(s[1], s[2]);
  }
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

LinearHypergraph generate_linear_hypergraph(std::span<const std::uint64_t> vertices,
                                            std::uint64_t seed) {
  LinearHypergraph g;
  g.vertices.assign(vertices.begin(), vertices.end());
  std::sort(g.vertices.begin(), g.vertices.end());
  g.vertices.erase(std::unique(g.vertices.begin(), g.vertices.end()), g.vertices.end());
  const std::size_t v = g.vertices.size();
  if (v < 3) return g;
  const unsigned __int128 candidates = static_cast<unsigned __int128>(v) * (v - 1) * (v - 2) / 6;
  if (candidates > kTripleCutoff) {
    throw ResourceLimit("linear hypergraph on " + std::to_string(v) +
                        " vertices exceeds the candidate triple cutoff");
  }
  std::vector<std::array<std::uint32_t, 3>> order;
  order.reserve(static_cast<std::size_t>(candidates));
  for (std::uint32_t a = 0; a < v; ++a)
    for (std::uint32_t b = a + 1; b < v; ++b)
      for (std::uint32_t c = b + 1; c < v; ++c) order.push_back({a, b, c});
  Rng rng(seed);
  rng.shuffle(std::span(order));
  std::vector<bool> pair_used(v * v, false);
  for (const auto& [a, b, c] : order) {
    if (pair_used[a * v + b] || pair_used[a * v + c] || pair_used[b * v + c]) continue;
    pair_used[a * v + b] = pair_used[a * v + c] = pair_used[b * v + c] = true;
    g.triples.push_back({g.vertices[a], g.vertices[b], g.vertices[c]});
  }
  return g;
}

LinearHypergraph generate_linear_hypergraph(std::uint64_t primes_lo, std::uint64_t primes_hi,
                                            std::uint64_t seed, const PrimeTable& table) {
  if (primes_lo >= primes_hi) throw InvalidArgument("hypergraph prime interval is empty");
  if (primes_hi > table.limit()) throw InvalidArgument("hypergraph interval exceeds prime table");
  const auto [first, last] = table.prime_range(primes_lo, primes_hi - 1);
  std::vector<std::uint64_t> vertices(table.primes().begin() + first,
                                      table.primes().begin() + last);
  return generate_linear_hypergraph(vertices, seed);
}

std::vector<std::uint64_t> h2_triple_primes(std::uint64_t n, const PrimeTable& table) {
  require_table(n, table, "h2_triple_primes");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : table.primes()) {
    const unsigned __int128 cube = static_cast<unsigned __int128>(p) * p * p;
    if (cube >= n) break;
    if (8 * cube > n) out.push_back(p);
  }
  return out;
}

Cut Cut::parse(const std::string& text) {
  if (text == "sqrt-over-log") return {CutKind::sqrt_over_log, 0};
  if (text == "sqrt") return {CutKind::sqrt, 0};
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value >= 0)) {
    throw InvalidArgument("cut must be 'sqrt-over-log', 'sqrt' or a nonnegative number, got '" +
                          text + "'");
  }
  return {CutKind::explicit_lower, value};
}

PrimeInterval resolve_interval(const FamilySpec& spec) {
  const std::uint64_t n = spec.n;
  if (n < 2) throw InvalidArgument("family universe must be n >= 2");
  PrimeInterval iv;
  iv.n = n;
  switch (spec.cut.kind) {
    case CutKind::sqrt:
      iv.lower = std::sqrt(static_cast<double>(n));
      iv.first = isqrt(n) + 1;  // p > sqrt(n) iff p*p > n
      break;
    case CutKind::sqrt_over_log: {
      const long double x = static_cast<long double>(n);
      const long double lower = std::sqrt(x) / std::log(x);
      iv.lower = static_cast<double>(lower);
      auto first = static_cast<std::uint64_t>(std::floor(lower)) + 1;
      // Audit the integers on both sides of the real boundary.
      while (first > 1 && static_cast<long double>(first - 1) > lower) --first;
      while (static_cast<long double>(first) <= lower) ++first;
      iv.first = first;
      break;
    }
    case CutKind::explicit_lower:
      iv.lower = spec.cut.lower;
      iv.first = static_cast<std::uint64_t>(std::floor(spec.cut.lower)) + 1;
      break;
  }
  if (!(iv.lower < static_cast<double>(n))) {
    throw InvalidArgument("large-prime interval (" + format_real(iv.lower) + ", " +
                          std::to_string(n) + "] is empty");
  }
  iv.first = std::max<std::uint64_t>(iv.first, 2);
  const double frac = iv.lower - std::floor(iv.lower);
  iv.boundary_margin = std::min(frac, 1.0 - frac);
  return iv;
}

std::string describe_cut(const FamilySpec& spec) {
  if (spec.h == 2) return "sqrt(" + format_real(std::sqrt(static_cast<double>(spec.n))) + ")";
  const auto iv = resolve_interval(spec);
  switch (spec.cut.kind) {
    case CutKind::sqrt: return "sqrt(" + format_real(iv.lower) + ")";
    case CutKind::sqrt_over_log: return "sqrt-over-log(" + format_real(iv.lower) + ")";
    case CutKind::explicit_lower: return "explicit(" + format_real(iv.lower) + ")";
  }
  return "unknown";
}

IntegerSet construct_h2(std::uint64_t n, const Choices& a1_choices, const LinearHypergraph& g,
                        const PrimeTable& table) {
  require_table(n, table, "construct_h2");
  std::vector<std::uint64_t> elements;
  for (const auto& [p, m] : a1_choices) {
    if (p > n || !table.is_prime(p) || p * p <= n) {
      throw InvalidArgument("A1 choice for " + std::to_string(p) +
                            ": not a prime in (sqrt n, n]");
    }
    if (m == 0 || m > n || m % p != 0) {
      throw InvalidArgument("A1 choice " + std::to_string(m) + " for prime " +
                            std::to_string(p) + " is not a multiple of it up to n");
    }
    elements.push_back(m);
  }
  const auto allowed = h2_triple_primes(n, table);
  for (auto v : g.vertices) {
    if (!std::binary_search(allowed.begin(), allowed.end(), v)) {
      throw InvalidArgument("hypergraph vertex " + std::to_string(v) +
                            " is not a prime in (n^{1/3}/2, n^{1/3}) for n=" + std::to_string(n));
    }
  }
  if (!is_linear(g)) throw InvalidArgument("hypergraph is not linear");
  for (const auto& t : g.triples) elements.push_back(t[0] * t[1] * t[2]);
  auto family = IntegerSet::from_unsorted(std::move(elements), n);
  if (!possesses_ph(family, 2).holds) {
    throw InternalError("constructed h=2 family fails P_2");
  }
  return family;
}

BigCount count_a1_families(std::uint64_t n, const PrimeTable& table) {
  require_table(n, table, "count_a1_families");
  std::vector<std::uint64_t> factors;
  for (std::uint64_t p : table.primes()) {
    if (p > n) break;
    if (p * p <= n) continue;
    std::uint64_t multiples = 0;
    for (std::uint64_t m = p; m <= n; m += p) ++multiples;
    factors.push_back(multiples + 1);
  }
  return BigCount::product(factors);
}

std::vector<IntegerSet> all_a1_families(std::uint64_t n, const PrimeTable& table,
                                        std::uint64_t cap) {
  require_table(n, table, "all_a1_families");
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p : table.primes()) {
    if (p > n) break;
    if (p * p > n) primes.push_back(p);
  }
  std::uint64_t total = 1;
  for (auto p : primes) {
    total *= n / p + 1;
    if (total > cap) throw ResourceLimit("more than " + std::to_string(cap) + " A1 families");
  }
  std::vector<IntegerSet> out;
  out.reserve(total);
  std::vector<std::uint64_t> digit(primes.size(), 0);  // 0 = none, k = k*p
  for (;;) {
    std::vector<std::uint64_t> elems;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (digit[i]) elems.push_back(digit[i] * primes[i]);
    }
    out.push_back(IntegerSet::from_unsorted(std::move(elems), n));
    std::size_t i = 0;
    while (i < primes.size() && digit[i] == n / primes[i]) digit[i++] = 0;
    if (i == primes.size()) break;
    ++digit[i];
  }
  return out;
}

Choices random_a1_choices(std::uint64_t n, const PrimeTable& table, Rng& rng) {
  require_table(n, table, "random_a1_choices");
  Choices choices;
  for (std::uint64_t p : table.primes()) {
    if (p > n) break;
    if (p * p <= n) continue;
    const std::uint64_t k = rng.below(n / p + 1);
    if (k) choices[p] = k * p;
  }
  return choices;
}

namespace {

constexpr std::uint32_t kUnowned = 0;
constexpr std::uint32_t kShared = std::numeric_limits<std::uint32_t>::max();

// owner[m] = 1 + index of the unique I-prime of m, kUnowned or kShared.
std::vector<std::uint32_t> mark_owners(const PrimeInterval& iv, std::span<const std::uint32_t> primes) {
  std::vector<std::uint32_t> owner(iv.n + 1, kUnowned);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint32_t tag = static_cast<std::uint32_t>(i + 1);
    for (std::uint64_t m = primes[i]; m <= iv.n; m += primes[i]) {
      owner[m] = owner[m] == kUnowned ? tag : kShared;
    }
  }
  return owner;
}

std::span<const std::uint32_t> interval_primes(const PrimeInterval& iv, const PrimeTable& table) {
  const auto [first, last] = table.prime_range(iv.first - 1, iv.n);
  return table.primes().subspan(first, last - first);
}

}  // namespace

ChoiceCounts h3plus_choice_counts(const FamilySpec& spec, const PrimeTable& table) {
  require_table(spec.n, table, "count_h3plus_families");
  ChoiceCounts out;
  out.interval = resolve_interval(spec);
  const auto primes = interval_primes(out.interval, table);
  out.primes.assign(primes.begin(), primes.end());
  out.counts.assign(primes.size(), 0);
  const auto owner = mark_owners(out.interval, primes);
  for (std::uint64_t m = 2; m <= spec.n; ++m) {
    if (owner[m] != kUnowned && owner[m] != kShared) ++out.counts[owner[m] - 1];
  }
  return out;
}

BigCount count_h3plus_families(const FamilySpec& spec, const PrimeTable& table) {
  const auto counts = h3plus_choice_counts(spec, table);
  std::vector<std::uint64_t> factors;
  factors.reserve(counts.counts.size());
  for (auto c : counts.counts) factors.push_back(c + 1);
  return BigCount::product(factors);
}

AdmissibleMultiples h3plus_admissible(const FamilySpec& spec, const PrimeTable& table) {
  require_table(spec.n, table, "h3plus_admissible");
  AdmissibleMultiples out;
  out.interval = resolve_interval(spec);
  const auto primes = interval_primes(out.interval, table);
  out.primes.assign(primes.begin(), primes.end());
  out.multiples.resize(primes.size());
  const auto owner = mark_owners(out.interval, primes);
  for (std::uint64_t m = 2; m <= spec.n; ++m) {
    if (owner[m] != kUnowned && owner[m] != kShared) out.multiples[owner[m] - 1].push_back(m);
  }
  return out;
}

IntegerSet construct_h3plus(const FamilySpec& spec, const Choices& choices,
                            const PrimeTable& table) {
  if (spec.h < 3) throw InvalidArgument("construct_h3plus requires h >= 3");
  require_table(spec.n, table, "construct_h3plus");
  const auto iv = resolve_interval(spec);
  std::vector<std::uint64_t> elements;
  for (const auto& [p, m] : choices) {
    if (p > spec.n || !table.is_prime(p) || !iv.contains(p)) {
      throw InvalidArgument("choice for " + std::to_string(p) + ": not a prime in the interval (" +
                            format_real(iv.lower) + ", " + std::to_string(spec.n) + "]");
    }
    if (m == 0 || m > spec.n || m % p != 0) {
      throw InvalidArgument("choice " + std::to_string(m) + " for prime " + std::to_string(p) +
                            " is not a multiple of it up to n");
    }
    for (const auto& [q, e] : table.factorize(m)) {
      if (q != p && iv.contains(q)) {
        throw InvalidArgument("choice " + std::to_string(m) + " for prime " + std::to_string(p) +
                              " has a second prime " + std::to_string(q) + " in the interval");
      }
    }
    elements.push_back(m);
  }
  auto family = IntegerSet::from_unsorted(std::move(elements), spec.n);
  if (!possesses_ph(family, spec.h).holds) {
    throw InternalError("constructed family fails P_" + std::to_string(spec.h));
  }
  return family;
}

Choices random_h3plus_choices(const AdmissibleMultiples& admissible, Rng& rng) {
  Choices choices;
  for (std::size_t i = 0; i < admissible.primes.size(); ++i) {
    const auto& options = admissible.multiples[i];
    const std::uint64_t k = rng.below(options.size() + 1);
    if (k) choices[admissible.primes[i]] = options[k - 1];
  }
  return choices;
}

void write_family(std::ostream& out, const FamilySpec& spec, const IntegerSet& family) {
  out << "# n=" << spec.n << " h=" << spec.h << " seed=" << spec.seed
      << " cut=" << describe_cut(spec) << '\n';
  write_set(out, family);
}

void write_hypergraph(std::ostream& out, const LinearHypergraph& g) {
  for (const auto& t : g.triples) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace divprod
