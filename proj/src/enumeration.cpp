#include "divprod/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <numeric>
#include <string>
#include <thread>

#include "divprod/errors.hpp"
#include "divprod/property.hpp"

namespace divprod {

namespace {

using Mask = std::uint64_t;
using EdgeList = std::vector<Mask>;

constexpr Mask bit(unsigned v) { return Mask{1} << v; }

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

IntegerSet range_set(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> v;
  for (std::uint64_t x = lo; x <= hi; ++x) v.push_back(x);
  return IntegerSet(std::move(v));
}

// Hypergraph on vertex indices 0..V-1 for a universe of at most 64 elements.
struct MaskHypergraph {
  std::vector<std::uint64_t> labels;
  EdgeList edges;
};

MaskHypergraph to_masks(const ViolationHypergraph& g) {
  MaskHypergraph m;
  m.labels = g.vertices;
  for (const auto& e : g.edges) {
    Mask mask = 0;
    for (auto v : e) {
      auto it = std::lower_bound(g.vertices.begin(), g.vertices.end(), v);
      mask |= bit(static_cast<unsigned>(it - g.vertices.begin()));
    }
    m.edges.push_back(mask);
  }
  return m;
}

// Edges reachable from each other through shared vertices.
std::vector<std::pair<EdgeList, Mask>> split_components(const EdgeList& edges) {
  std::vector<std::pair<EdgeList, Mask>> comps;
  std::vector<bool> taken(edges.size(), false);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (taken[i]) continue;
    Mask span = edges[i];
    taken[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        if (!taken[j] && (edges[j] & span)) {
          taken[j] = true;
          span |= edges[j];
          grew = true;
        }
      }
    }
    EdgeList part;
    for (std::size_t j = i; j < edges.size(); ++j) {
      if ((edges[j] & span) && (edges[j] & ~span) == 0) part.push_back(edges[j]);
    }
    comps.emplace_back(std::move(part), span);
  }
  return comps;
}

// Lowest-index vertex of maximum degree.
unsigned branch_vertex(const EdgeList& edges, Mask verts) {
  std::array<unsigned, 64> degree{};
  for (Mask e : edges) {
    for (Mask m = e; m; m &= m - 1) ++degree[std::countr_zero(m)];
  }
  unsigned best = std::countr_zero(verts);
  for (Mask m = verts; m; m &= m - 1) {
    const unsigned v = std::countr_zero(m);
    if (degree[v] > degree[best]) best = v;
  }
  return best;
}

EdgeList without_vertex(const EdgeList& edges, unsigned v) {
  EdgeList out;
  out.reserve(edges.size());
  for (Mask e : edges) {
    if (!(e & bit(v))) out.push_back(e);
  }
  return out;
}

// Returns false if some edge becomes fully chosen.
bool with_vertex(const EdgeList& edges, unsigned v, EdgeList& out) {
  out.clear();
  out.reserve(edges.size());
  for (Mask e : edges) {
    const Mask r = e & ~bit(v);
    if (r == 0) return false;
    out.push_back(r);
  }
  return true;
}

// Excludes vertices forced by singleton edges. Returns false on an empty edge.
bool propagate(EdgeList& edges, Mask& verts) {
  for (;;) {
    Mask forced = 0;
    for (Mask e : edges) {
      if (e == 0) return false;
      if ((e & (e - 1)) == 0) forced |= e;
    }
    if (!forced) return true;
    verts &= ~forced;
    std::erase_if(edges, [forced](Mask e) { return (e & forced) != 0; });
  }
}

class IndependentSetCounter {
 public:
  explicit IndependentSetCounter(std::uint64_t budget) : budget_(budget) {}

  // Subsets of `verts` containing no residual edge. Every edge must be a
  // subset of `verts`.
  std::uint64_t count(EdgeList edges, Mask verts) {
    tick();
    if (!propagate(edges, verts)) return 0;
    Mask covered = 0;
    for (Mask e : edges) covered |= e;
    const unsigned isolated = std::popcount(verts & ~covered);
    if (edges.empty()) return std::uint64_t{1} << isolated;
    auto comps = split_components(edges);
    std::uint64_t total = std::uint64_t{1} << isolated;
    if (comps.size() > 1) {
      for (auto& [part, span] : comps) {
        total *= count(std::move(part), span);
        if (total == 0) return 0;
      }
      return total;
    }
    return total * branch(std::move(edges), covered);
  }

  std::uint64_t nodes() const { return nodes_.load(std::memory_order_relaxed); }
  std::atomic<std::uint64_t>& node_counter() { return nodes_; }

 private:
  std::uint64_t branch(EdgeList edges, Mask verts) {
    const unsigned v = branch_vertex(edges, verts);
    const Mask rest = verts & ~bit(v);
    std::uint64_t total = count(without_vertex(edges, v), rest);
    EdgeList included;
    if (with_vertex(edges, v, included)) total += count(std::move(included), rest);
    return total;
  }

  void tick() {
    const auto seen = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (budget_ != 0 && seen > budget_) {
      throw ResourceLimit("search node budget of " + std::to_string(budget_) + " exhausted");
    }
  }

  std::uint64_t budget_;
  std::atomic<std::uint64_t> nodes_{0};
};

struct Task {
  EdgeList edges;
  Mask verts;
};

// Fixed assignments of the first branch vertices; the count of the root is
// the sum over the leaves of this expansion.
std::vector<Task> expand_frontier(EdgeList edges, Mask verts, std::size_t target) {
  std::vector<Task> frontier;
  frontier.push_back({std::move(edges), verts});
  while (frontier.size() < target) {
    std::vector<Task> next;
    bool split_any = false;
    for (auto& t : frontier) {
      if (t.edges.empty() || t.verts == 0) {
        next.push_back(std::move(t));
        continue;
      }
      split_any = true;
      const unsigned v = branch_vertex(t.edges, t.verts);
      const Mask rest = t.verts & ~bit(v);
      EdgeList included;
      const bool ok = with_vertex(t.edges, v, included);
      next.push_back({without_vertex(t.edges, v), rest});
      if (ok) next.push_back({std::move(included), rest});
    }
    frontier = std::move(next);
    if (!split_any) break;
  }
  return frontier;
}

std::uint64_t count_component(IndependentSetCounter& counter, EdgeList edges, Mask verts,
                              unsigned workers) {
  if (workers <= 1) return counter.count(std::move(edges), verts);
  auto tasks = expand_frontier(std::move(edges), verts, std::size_t{8} * workers);
  std::vector<std::uint64_t> results(tasks.size(), 0);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            results[i] = counter.count(std::move(tasks[i].edges), tasks[i].verts);
          }
        } catch (...) {
          errors[w] = std::current_exception();
          next.store(tasks.size());
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return std::accumulate(results.begin(), results.end(), std::uint64_t{0});
}

std::string describe_components(const std::vector<std::size_t>& sizes) {
  std::string s = "[";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sizes[i]);
  }
  return s + "]";
}

}  // namespace

ViolationHypergraph build_violation_hypergraph(const IntegerSet& universe, unsigned h) {
  if (h < 1) throw InvalidArgument("P_h requires h >= 1");
  const auto elems = universe.elements();
  const std::uint64_t tuples = binomial_capped(elems.size(), h + 1, kHypergraphTupleCutoff);
  if (tuples > kHypergraphTupleCutoff) {
    throw ResourceLimit("violation hypergraph on " + std::to_string(elems.size()) +
                        " vertices exceeds " + std::to_string(kHypergraphTupleCutoff) +
                        " candidate tuples");
  }
  ViolationHypergraph g;
  g.vertices.assign(elems.begin(), elems.end());
  g.h = h;
  std::vector<bool> touched(elems.size(), false);
  std::vector<std::size_t> idx(h + 1);
  std::vector<std::uint64_t> tuple(h + 1);
  if (elems.size() >= h + 1) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
      for (unsigned i = 0; i <= h; ++i) tuple[i] = elems[idx[i]];
      if (!holds_ph(tuple, h)) {
        g.edges.push_back(tuple);
        for (auto i : idx) touched[i] = true;
      }
      int k = static_cast<int>(h);
      while (k >= 0 && idx[k] == elems.size() - (h + 1) + static_cast<std::size_t>(k)) --k;
      if (k < 0) break;
      ++idx[k];
      for (unsigned j = k + 1; j <= h; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (!touched[i]) g.free_vertices.push_back(elems[i]);
  }
  return g;
}

ViolationHypergraph build_violation_hypergraph(std::uint64_t n, unsigned h) {
  if (n < 1) throw InvalidArgument("universe size must be >= 1");
  return build_violation_hypergraph(range_set(1, n), h);
}

BigCount count_brute(const IntegerSet& universe, unsigned h) {
  if (h < 1) throw InvalidArgument("P_h requires h >= 1");
  const auto elems = universe.elements();
  if (elems.size() > kBruteMaxN) {
    throw ResourceLimit("brute-force counting is limited to " + std::to_string(kBruteMaxN) +
                        " elements");
  }
  std::uint64_t good = 0;
  std::vector<std::uint64_t> subset;
  subset.reserve(elems.size());
  const std::uint64_t total = std::uint64_t{1} << elems.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    subset.clear();
    for (Mask m = mask; m; m &= m - 1) subset.push_back(elems[std::countr_zero(m)]);
    if (holds_ph(subset, h)) ++good;
  }
  return BigCount(good);
}

BigCount count_brute(std::uint64_t n, unsigned h) {
  if (n > kBruteMaxN) {
    throw ResourceLimit("brute-force counting is limited to n <= " + std::to_string(kBruteMaxN));
  }
  return count_brute(n == 0 ? IntegerSet{} : range_set(1, n), h);
}

BigCount count_containing_one(std::uint64_t n, unsigned h) {
  if (n < 1) throw InvalidArgument("universe size must be >= 1");
  if (h < 1) throw InvalidArgument("P_h requires h >= 1");
  mpz_class total = 0, term;
  for (unsigned k = 0; k < h && k <= n - 1; ++k) {
    mpz_bin_uiui(term.get_mpz_t(), n - 1, k);
    total += term;
  }
  return BigCount(total);
}

CountReport count_exact_report(std::uint64_t n, unsigned h, const CountOptions& options) {
  if (n < 1) throw InvalidArgument("universe size must be >= 1");
  if (h < 1) throw InvalidArgument("P_h requires h >= 1");
  if (options.workers < 1) throw InvalidArgument("workers must be >= 1");
  if (n > kSearchMaxN) {
    throw ResourceLimit("exact counting is limited to n <= " + std::to_string(kSearchMaxN));
  }
  CountReport report;
  report.containing_one = count_containing_one(n, h);
  if (n == 1) {
    report.avoiding_one = BigCount(1);
    report.count = report.containing_one + report.avoiding_one;
    return report;
  }
  const auto graph = build_violation_hypergraph(range_set(2, n), h);
  const auto masks = to_masks(graph);
  report.edges = masks.edges.size();
  report.free_vertices = graph.free_vertices.size();
  auto comps = split_components(masks.edges);
  for (const auto& c : comps) report.component_sizes.push_back(std::popcount(c.second));
  std::sort(report.component_sizes.rbegin(), report.component_sizes.rend());

  IndependentSetCounter counter(options.node_budget);
  std::uint64_t avoiding = std::uint64_t{1} << graph.free_vertices.size();
  try {
    for (auto& [part, span] : comps) {
      avoiding *= count_component(counter, std::move(part), span, options.workers);
    }
  } catch (const ResourceLimit& e) {
    throw ResourceLimit(std::string(e.what()) + "; n=" + std::to_string(n) +
                        " h=" + std::to_string(h) + " component sizes " +
                        describe_components(report.component_sizes));
  }
  report.nodes = counter.nodes();
  report.avoiding_one = BigCount(avoiding);
  report.count = report.containing_one + report.avoiding_one;
  return report;
}

BigCount count_exact(std::uint64_t n, unsigned h, unsigned workers) {
  return count_exact_report(n, h, CountOptions{workers, 0}).count;
}

BigCount count_avoiding_one(std::uint64_t n, unsigned h, unsigned workers) {
  return count_exact_report(n, h, CountOptions{workers, 0}).avoiding_one;
}

namespace {

class ExtremalSearch {
 public:
  explicit ExtremalSearch(Mask initial_best) : best_(initial_best) {}

  void run(EdgeList edges, Mask verts, Mask chosen) {
    if (!propagate(edges, verts)) return;
    Mask covered = 0;
    for (Mask e : edges) covered |= e;
    chosen |= verts & ~covered;
    verts &= covered;
    if (edges.empty()) {
      offer(chosen);
      return;
    }
    if (upper_bound(edges, verts, chosen) <= std::popcount(best_)) return;
    const unsigned v = branch_vertex(edges, verts);
    const Mask rest = verts & ~bit(v);
    EdgeList included;
    if (with_vertex(edges, v, included)) run(std::move(included), rest, chosen | bit(v));
    run(without_vertex(edges, v), rest, chosen);
  }

  Mask best() const { return best_; }

 private:
  // Each residual edge in a vertex-disjoint packing forces one exclusion.
  static int upper_bound(const EdgeList& edges, Mask verts, Mask chosen) {
    Mask used = 0;
    int packed = 0;
    for (int size = 2; size <= 64 && used != verts; ++size) {
      bool any = false;
      for (Mask e : edges) {
        const int c = std::popcount(e);
        if (c > size) any = true;
        if (c == size && !(e & used)) {
          used |= e;
          ++packed;
        }
      }
      if (!any) break;
    }
    return std::popcount(chosen) + std::popcount(verts) - packed;
  }

  void offer(Mask chosen) {
    if (std::popcount(chosen) > std::popcount(best_)) best_ = chosen;
  }

  Mask best_;
};

}  // namespace

ExtremalResult extremal_size(std::uint64_t n, unsigned h) {
  if (n < 1) throw InvalidArgument("universe size must be >= 1");
  if (h < 1) throw InvalidArgument("P_h requires h >= 1");
  if (n > kSearchMaxN) {
    throw ResourceLimit("extremal search is limited to n <= " + std::to_string(kSearchMaxN));
  }
  // A good set containing 1 has at most h elements.
  std::vector<std::uint64_t> with_one;
  for (std::uint64_t x = 1; x <= std::min<std::uint64_t>(n, h); ++x) with_one.push_back(x);

  std::vector<std::uint64_t> best_without;
  if (n >= 2) {
    const auto graph = build_violation_hypergraph(range_set(2, n), h);
    const auto masks = to_masks(graph);
    Mask verts = 0, primes = 0;
    for (unsigned i = 0; i < masks.labels.size(); ++i) {
      verts |= bit(i);
      const std::uint64_t x = masks.labels[i];
      bool prime = true;
      for (std::uint64_t d = 2; d * d <= x; ++d) prime = prime && (x % d != 0);
      if (prime) primes |= bit(i);
    }
    ExtremalSearch search(primes);
    search.run(masks.edges, verts, 0);
    for (Mask m = search.best(); m; m &= m - 1) {
      best_without.push_back(masks.labels[std::countr_zero(m)]);
    }
  }
  ExtremalResult result;
  auto& pick = best_without.size() >= with_one.size() ? best_without : with_one;
  result.size = pick.size();
  result.example = IntegerSet(pick, n);
  return result;
}

}  // namespace divprod
