#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace divprod {

// A finite set of positive integers kept as a strictly increasing sequence.
class IntegerSet {
 public:
  IntegerSet() = default;

  // Throws InvalidArgument on zero, duplicates or values out of order.
  explicit IntegerSet(std::vector<std::uint64_t> elements,
                      std::optional<std::uint64_t> universe_hint = std::nullopt);
  IntegerSet(std::initializer_list<std::uint64_t> elements);

  // Sorts and validates; duplicates are still rejected.
  static IntegerSet from_unsorted(std::vector<std::uint64_t> elements,
                                  std::optional<std::uint64_t> universe_hint = std::nullopt);

  std::span<const std::uint64_t> elements() const noexcept { return elements_; }
  const std::vector<std::uint64_t>& values() const noexcept { return elements_; }
  std::optional<std::uint64_t> universe_hint() const noexcept { return universe_hint_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(std::uint64_t value) const;
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  friend bool operator==(const IntegerSet& a, const IntegerSet& b) {
    return a.elements_ == b.elements_;
  }

 private:
  std::vector<std::uint64_t> elements_;
  std::optional<std::uint64_t> universe_hint_;
};

// Certificate that a set fails P_h (pivot | product of cofactors) or
// P_{r,s} (product of left | product of right). For P_h witnesses `left`
// holds the single pivot.
struct Witness {
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;

  std::uint64_t pivot() const { return left.front(); }
  const std::vector<std::uint64_t>& cofactors() const { return right; }

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Checks the witness invariants against `set`: every entry is a member,
// entries are pairwise distinct, and prod(left) divides prod(right).
bool witness_is_valid(const Witness& witness, const IntegerSet& set);

// Set file: one decimal integer per line, strictly increasing. Leading
// lines starting with '#' are treated as a header and skipped.
IntegerSet read_set(std::istream& in);
IntegerSet read_set_file(const std::string& path);
void write_set(std::ostream& out, const IntegerSet& set);

}  // namespace divprod
