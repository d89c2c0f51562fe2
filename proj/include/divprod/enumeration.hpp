#pragma once

#include <cstdint>
#include <vector>

#include "divprod/bigcount.hpp"
#include "divprod/integer_set.hpp"

namespace divprod {

// (h+1)-uniform hypergraph on a universe: a subset of the universe has P_h
// iff it contains no edge.
struct ViolationHypergraph {
  std::vector<std::uint64_t> vertices;             // the universe, increasing
  unsigned h = 0;
  std::vector<std::vector<std::uint64_t>> edges;   // each sorted, lexicographic order
  std::vector<std::uint64_t> free_vertices;        // in no edge
};

// Candidate (h+1)-tuples examined above which hypergraph construction refuses.
inline constexpr std::uint64_t kHypergraphTupleCutoff = 100'000'000;

// Largest universe handled by the brute-force counter.
inline constexpr std::uint64_t kBruteMaxN = 25;

// Largest n for exact counting and extremal search (vertices are bit masks).
inline constexpr std::uint64_t kSearchMaxN = 64;

ViolationHypergraph build_violation_hypergraph(const IntegerSet& universe, unsigned h);
// Universe [1..n].
ViolationHypergraph build_violation_hypergraph(std::uint64_t n, unsigned h);

// Counts good subsets by checking every subset of the universe.
BigCount count_brute(std::uint64_t n, unsigned h);
BigCount count_brute(const IntegerSet& universe, unsigned h);

struct CountOptions {
  unsigned workers = 1;
  // Search nodes allowed before giving up with ResourceLimit; 0 = unlimited.
  std::uint64_t node_budget = 0;
};

struct CountReport {
  BigCount count;               // H_h(n)
  BigCount containing_one;      // closed form
  BigCount avoiding_one;        // search over [2..n]
  std::size_t edges = 0;        // hypergraph on [2..n]
  std::vector<std::size_t> component_sizes;  // vertices per component, descending
  std::size_t free_vertices = 0;
  std::uint64_t nodes = 0;      // search nodes visited
};

// H_h(n) = count_containing_one + (independent-set count on [2..n]).
// Exact and independent of the worker count.
CountReport count_exact_report(std::uint64_t n, unsigned h, const CountOptions& options = {});
BigCount count_exact(std::uint64_t n, unsigned h, unsigned workers = 1);

// Good subsets of [2..n].
BigCount count_avoiding_one(std::uint64_t n, unsigned h, unsigned workers = 1);

// Good sets containing 1 are exactly those of size <= h:
// sum_{k=0}^{h-1} C(n-1, k).
BigCount count_containing_one(std::uint64_t n, unsigned h);

struct ExtremalResult {
  std::size_t size = 0;
  IntegerSet example;
};

// Largest good subset of [n] by branch and bound.
ExtremalResult extremal_size(std::uint64_t n, unsigned h);

}  // namespace divprod
