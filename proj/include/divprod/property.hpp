#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "divprod/integer_set.hpp"

namespace divprod {

struct CheckResult {
  bool holds = true;
  std::optional<Witness> witness;
};

// P_h: no pairwise-distinct a0, a1..ah in A with a0 | a1*...*ah.
//
// For each pivot the search looks for an essential cofactor set S with
// |S| <= h and a0 | prod(S); any h-subset containing S is then a witness.
// Products are never formed: the pivot is reduced by gcds, and candidates
// coprime to the residual are skipped.
//
// The returned witness has the smallest failing pivot and, for that pivot,
// the lexicographically smallest sorted h-tuple of cofactors.
CheckResult possesses_ph(const IntegerSet& set, unsigned h);

// Boolean-only variant over a strictly increasing span, used on hot paths.
bool holds_ph(std::span<const std::uint64_t> sorted, unsigned h);

// Number of (left, right) tuple pairs above which possesses_rs refuses.
inline constexpr std::uint64_t kRsTupleCutoff = 50'000'000;

// P_{r,s}: no r+s pairwise-distinct elements with prod(left) | prod(right).
// Exhaustive over tuples in lexicographic order with exact products; the
// first hit is the witness. Throws ResourceLimit above kRsTupleCutoff.
CheckResult possesses_rs(const IntegerSet& set, unsigned r, unsigned s);

}  // namespace divprod
