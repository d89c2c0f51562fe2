#include "divprod/basis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "divprod/errors.hpp"
#include "divprod/property.hpp"

namespace divprod {

namespace {

std::uint64_t large_prime_first(std::uint64_t n, unsigned h) {
  if (h == 2) return isqrt(n) + 1;
  if (n < 3) return 2;
  const long double x = static_cast<long double>(n);
  const long double lower = std::pow(x, 2.0L / (h + 1)) / std::log(x);
  auto first = static_cast<std::uint64_t>(std::floor(lower)) + 1;
  while (first > 1 && static_cast<long double>(first - 1) > lower) --first;
  while (static_cast<long double>(first) <= lower) ++first;
  return std::max<std::uint64_t>(first, 2);
}

// Smallest t with t^(h+1) >= n^2.
std::uint64_t ceil_root_threshold(std::uint64_t n, unsigned h) {
  const unsigned __int128 target = static_cast<unsigned __int128>(n) * n;
  auto power_reaches = [&](std::uint64_t t) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i <= h; ++i) {
      acc *= t;
      if (acc >= target) return true;
    }
    return acc >= target;
  };
  std::uint64_t lo = 1, hi = n;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (power_reaches(mid)) hi = mid; else lo = mid + 1;
  }
  return lo;
}

// covered[m] != 0 iff m is a product of h elements of the (sorted) basis.
std::vector<char> coverage_levels(std::uint64_t n, unsigned h,
                                  std::span<const std::uint64_t> elements) {
  std::vector<char> level(n + 1, 0);
  for (auto b : elements) level[b] = 1;
  for (unsigned k = 2; k <= h; ++k) {
    std::vector<char> next(level);
    for (std::uint64_t y = 2; y <= n; ++y) {
      if (!level[y]) continue;
      for (auto b : elements) {
        if (b * y > n) break;
        next[b * y] = 1;
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<std::uint64_t> greedy_chunks(std::uint64_t m, std::uint64_t n, unsigned h,
                                         const PrimeTable& table) {
  const long double bound = std::pow(static_cast<long double>(n), 1.0L / (h + 1));
  std::vector<std::uint64_t> chunks;
  std::uint64_t chunk = 1;
  for (const auto& [p, e] : table.factorize(m)) {
    for (unsigned i = 0; i < e; ++i) {
      chunk *= p;
      if (static_cast<long double>(chunk) > bound) {
        chunks.push_back(chunk);
        chunk = 1;
      }
    }
  }
  if (chunk > 1) chunks.push_back(chunk);
  return chunks;
}

}  // namespace

Basis::Basis(std::uint64_t n, unsigned h, std::vector<std::uint64_t> elements,
             const PrimeTable& table)
    : n_(n), h_(h), elements_(std::move(elements)), p_first_(large_prime_first(n, h)) {
  if (h < 2) throw InvalidArgument("multiplicative basis order must be >= 2");
  if (n < 1 || n > table.limit()) {
    throw InvalidArgument("basis universe n=" + std::to_string(n) + " outside prime table range");
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  member_.assign(n + 1, false);
  prime_.assign(n + 1, false);
  for (auto b : elements_) {
    if (b < 1 || b > n) {
      throw InvalidArgument("basis element " + std::to_string(b) + " outside [1, " +
                            std::to_string(n) + "]");
    }
    member_[b] = true;
  }
  if (!member_[1]) throw InvalidArgument("basis must contain 1");
  for (std::uint64_t p : table.primes()) {
    if (p > n) break;
    prime_[p] = true;
  }
}

bool Basis::is_large_prime(std::uint64_t b) const {
  return b >= p_first_ && b <= n_ && prime_[b];
}

std::vector<std::uint64_t> Basis::extras() const {
  std::vector<std::uint64_t> out;
  for (auto b : elements_) {
    if (!is_large_prime(b)) out.push_back(b);
  }
  return out;
}

bool Basis::verify_coverage() {
  const auto level = coverage_levels(n_, h_, elements_);
  verified_ = std::all_of(level.begin() + 1, level.end(), [](char c) { return c != 0; });
  return verified_;
}

Basis build_basis(std::uint64_t n, unsigned h, const PrimeTable& table) {
  if (h < 2) throw InvalidArgument("multiplicative basis order must be >= 2");
  if (n < 1 || n > table.limit()) {
    throw InvalidArgument("build_basis: n=" + std::to_string(n) + " outside prime table range");
  }
  std::vector<char> in_basis(n + 1, 0);
  in_basis[1] = 1;
  for (std::uint64_t p : table.primes()) {
    if (p > n) break;
    in_basis[p] = 1;
  }
  const std::uint64_t t = std::min(ceil_root_threshold(n, h), n);
  for (std::uint64_t m = 2; m <= t; ++m) in_basis[m] = 1;

  auto current = [&] {
    std::vector<std::uint64_t> e;
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (in_basis[m]) e.push_back(m);
    }
    return e;
  };
  auto first_gap = [&](const std::vector<std::uint64_t>& elems) -> std::uint64_t {
    const auto level = coverage_levels(n, h, elems);
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (!level[m]) return m;
    }
    return 0;
  };

  auto elems = current();
  for (std::uint64_t gap = first_gap(elems); gap != 0; gap = first_gap(elems)) {
    for (auto c : greedy_chunks(gap, n, h, table)) in_basis[c] = 1;
    elems = current();
    const auto level = coverage_levels(n, h, elems);
    if (!level[gap]) {
      in_basis[gap] = 1;
      elems = current();
    }
    if (elems.size() > n) throw InternalError("basis repair loop did not converge");
  }
  Basis basis(n, h, std::move(elems), table);
  if (!basis.verify_coverage()) throw InternalError("basis coverage failed after repair");
  return basis;
}

std::vector<std::uint64_t> divisors(std::uint64_t m, const PrimeTable& table) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : table.factorize(m)) {
    const std::size_t base = out.size();
    std::uint64_t power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Expressibility::Expressibility(const Basis& basis, const PrimeTable& table)
    : basis_(basis), table_(table) {}

bool Expressibility::operator()(std::uint64_t m, unsigned k) {
  if (m < 1 || m > basis_.universe()) {
    throw InvalidArgument("expressible: m=" + std::to_string(m) + " outside [1, " +
                          std::to_string(basis_.universe()) + "]");
  }
  if (k < 1) throw InvalidArgument("expressible: k must be >= 1");
  if (k == 1) return basis_.contains(m);
  if (memo_.size() <= k) memo_.resize(k + 1);
  auto& row = memo_[k];
  if (row.empty()) row.assign(basis_.universe() + 1, -1);
  if (row[m] >= 0) return row[m] != 0;
  bool found = false;
  for (auto d : divisors(m, table_)) {
    if (basis_.contains(d) && (*this)(m / d, k - 1)) {
      found = true;
      break;
    }
  }
  row[m] = found ? 1 : 0;
  return found;
}

bool expressible(std::uint64_t m, const Basis& basis, unsigned k, const PrimeTable& table) {
  Expressibility e(basis, table);
  return e(m, k);
}

namespace {

struct Bipartite {
  std::vector<std::uint64_t> left;                  // A, increasing
  // Basis elements, decreasing: the largest admissible divisor is tried
  // first, so a basis member matches itself when it can.
  std::vector<std::vector<std::uint64_t>> adjacent;
};

Bipartite build_graph(const IntegerSet& set, const Basis& basis, const PrimeTable& table) {
  Bipartite g;
  Expressibility expr(basis, table);
  const unsigned h = basis.order();
  for (auto a : set) {
    g.left.push_back(a);
    auto& adj = g.adjacent.emplace_back();
    for (auto b : divisors(a, table)) {
      if (basis.contains(b) && expr(a / b, h - 1)) adj.push_back(b);
    }
    std::reverse(adj.begin(), adj.end());
  }
  return g;
}

class Matcher {
 public:
  explicit Matcher(const Bipartite& g) : g_(g) {}

  void run() {
    for (std::size_t i = 0; i < g_.left.size(); ++i) {
      seen_.clear();
      augment(i);
    }
  }

  // Left indices reachable from `start` by alternating paths.
  std::vector<std::size_t> reachable(std::size_t start) const {
    std::vector<std::size_t> out{start};
    std::map<std::uint64_t, bool> seen;
    std::vector<bool> taken(g_.left.size(), false);
    taken[start] = true;
    for (std::size_t q = 0; q < out.size(); ++q) {
      for (auto b : g_.adjacent[out[q]]) {
        if (seen[b]) continue;
        seen[b] = true;
        auto it = owner_.find(b);
        if (it != owner_.end() && !taken[it->second]) {
          taken[it->second] = true;
          out.push_back(it->second);
        }
      }
    }
    return out;
  }

  const std::map<std::uint64_t, std::size_t>& owner() const { return owner_; }

 private:
  bool augment(std::size_t i) {
    for (auto b : g_.adjacent[i]) {
      if (seen_[b]) continue;
      seen_[b] = true;
      auto it = owner_.find(b);
      if (it == owner_.end() || augment(it->second)) {
        owner_[b] = i;
        return true;
      }
    }
    return false;
  }

  const Bipartite& g_;
  std::map<std::uint64_t, std::size_t> owner_;  // basis element -> left index
  std::map<std::uint64_t, bool> seen_;
};

}  // namespace

MatchingCertificate verify_injection(const IntegerSet& set, const Basis& basis,
                                     const PrimeTable& table) {
  if (!basis.coverage_verified()) throw InvalidArgument("basis coverage has not been verified");
  auto check = possesses_ph(set, basis.order());
  if (!check.holds) {
    throw PreconditionFailure("set does not possess P_" + std::to_string(basis.order()),
                              std::move(check.witness));
  }
  return maximum_matching(set, basis, table);
}

MatchingCertificate maximum_matching(const IntegerSet& set, const Basis& basis,
                                     const PrimeTable& table) {
  if (!set.empty() && set.values().back() > basis.universe()) {
    throw InvalidArgument("set element " + std::to_string(set.values().back()) +
                          " exceeds basis universe " + std::to_string(basis.universe()));
  }
  const auto g = build_graph(set, basis, table);
  Matcher matcher(g);
  matcher.run();
  MatchingCertificate cert;
  std::vector<std::uint64_t> image(g.left.size(), 0);
  for (const auto& [b, i] : matcher.owner()) image[i] = b;
  for (std::size_t i = 0; i < g.left.size(); ++i) {
    if (image[i]) cert.pairs.emplace_back(g.left[i], image[i]);
    else cert.unmatched.push_back(g.left[i]);
  }
  if (!cert.unmatched.empty()) {
    const auto start = static_cast<std::size_t>(
        std::find(g.left.begin(), g.left.end(), cert.unmatched.front()) - g.left.begin());
    std::vector<std::uint64_t> nbhd;
    for (auto i : matcher.reachable(start)) {
      cert.hall_set.push_back(g.left[i]);
      nbhd.insert(nbhd.end(), g.adjacent[i].begin(), g.adjacent[i].end());
    }
    std::sort(cert.hall_set.begin(), cert.hall_set.end());
    std::sort(nbhd.begin(), nbhd.end());
    nbhd.erase(std::unique(nbhd.begin(), nbhd.end()), nbhd.end());
    cert.hall_neighbourhood = std::move(nbhd);
  }
  return cert;
}

bool certificate_is_valid(const MatchingCertificate& cert, const IntegerSet& set,
                          const Basis& basis, const PrimeTable& table) {
  std::vector<std::uint64_t> as, bs;
  Expressibility expr(basis, table);
  for (const auto& [a, b] : cert.pairs) {
    if (!set.contains(a) || !basis.contains(b) || a % b != 0) return false;
    if (!expr(a / b, basis.order() - 1)) return false;
    as.push_back(a);
    bs.push_back(b);
  }
  for (auto a : cert.unmatched) {
    if (!set.contains(a)) return false;
    as.push_back(a);
  }
  std::sort(as.begin(), as.end());
  std::sort(bs.begin(), bs.end());
  if (std::adjacent_find(as.begin(), as.end()) != as.end()) return false;
  if (std::adjacent_find(bs.begin(), bs.end()) != bs.end()) return false;
  return as == set.values();
}

bool matching_is_maximum(const MatchingCertificate& cert, const IntegerSet& set,
                         const Basis& basis, const PrimeTable& table) {
  const auto g = build_graph(set, basis, table);
  std::map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < g.left.size(); ++i) index[g.left[i]] = i;
  std::map<std::uint64_t, std::size_t> owner;
  for (const auto& [a, b] : cert.pairs) owner[b] = index.at(a);
  // Breadth-first search over alternating paths from all unmatched vertices
  // at once; reaching a free basis element means an augmenting path.
  std::vector<std::size_t> queue;
  std::vector<bool> taken(g.left.size(), false);
  for (auto a : cert.unmatched) {
    queue.push_back(index.at(a));
    taken[index.at(a)] = true;
  }
  std::map<std::uint64_t, bool> seen;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (auto b : g.adjacent[queue[q]]) {
      if (seen[b]) continue;
      seen[b] = true;
      auto it = owner.find(b);
      if (it == owner.end()) return false;
      if (!taken[it->second]) {
        taken[it->second] = true;
        queue.push_back(it->second);
      }
    }
  }
  return true;
}

ImagePartition partition_by_image(const MatchingCertificate& cert, const Basis& basis) {
  if (!cert.unmatched.empty()) {
    throw InvalidArgument("partition_by_image needs a certificate with no unmatched elements");
  }
  std::vector<std::uint64_t> to_primes, to_extras;
  for (const auto& [a, b] : cert.pairs) {
    (basis.is_large_prime(b) ? to_primes : to_extras).push_back(a);
  }
  return {IntegerSet::from_unsorted(std::move(to_primes)),
          IntegerSet::from_unsorted(std::move(to_extras))};
}

void write_basis(std::ostream& out, const Basis& basis) {
  out << "# n=" << basis.universe() << " h=" << basis.order() << " size=" << basis.size()
      << " verified=" << (basis.coverage_verified() ? "true" : "false") << '\n';
  for (auto b : basis.elements()) out << b << '\n';
}

namespace {

std::uint64_t header_field(const std::string& header, const std::string& key) {
  std::istringstream in(header.substr(1));
  std::string token;
  while (in >> token) {
    if (token.rfind(key + "=", 0) == 0) {
      const std::string value = token.substr(key.size() + 1);
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec == std::errc() && ptr == value.data() + value.size()) return v;
      break;
    }
  }
  throw InvalidArgument("basis file header lacks a valid '" + key + "=' field");
}

}  // namespace

Basis read_basis(std::istream& in, const PrimeTable& table) {
  std::string header;
  if (!std::getline(in, header) || header.empty() || header.front() != '#') {
    throw InvalidArgument("basis file must start with a '# n=.. h=..' header");
  }
  const std::uint64_t n = header_field(header, "n");
  const auto h = static_cast<unsigned>(header_field(header, "h"));
  const std::uint64_t size = header_field(header, "size");
  const IntegerSet elements = read_set(in);
  if (elements.size() != size) {
    throw InvalidArgument("basis file declares size=" + std::to_string(size) + " but lists " +
                          std::to_string(elements.size()) + " elements");
  }
  Basis basis(n, h, elements.values(), table);
  if (!basis.verify_coverage()) {
    throw InvalidArgument("basis file elements do not cover [" + std::to_string(n) +
                          "] with products of " + std::to_string(h));
  }
  return basis;
}

void write_certificate(std::ostream& out, const MatchingCertificate& cert) {
  for (const auto& [a, b] : cert.pairs) out << a << ' ' << b << '\n';
  out << "# unmatched:";
  for (auto a : cert.unmatched) out << ' ' << a;
  out << '\n';
}

}  // namespace divprod
