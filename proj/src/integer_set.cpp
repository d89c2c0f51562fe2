#include "divprod/integer_set.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "divprod/bigcount.hpp"
#include "divprod/errors.hpp"

namespace divprod {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::precondition: return "precondition-failure";
    case ErrorKind::internal: return "internal-error";
  }
  return "unknown";
}

IntegerSet::IntegerSet(std::vector<std::uint64_t> elements,
                       std::optional<std::uint64_t> universe_hint)
    : elements_(std::move(elements)), universe_hint_(universe_hint) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == 0) throw InvalidArgument("set elements must be positive");
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw InvalidArgument("set elements must be strictly increasing (got " +
                            std::to_string(elements_[i - 1]) + " then " +
                            std::to_string(elements_[i]) + ")");
    }
  }
  if (universe_hint_ && !elements_.empty() && elements_.back() > *universe_hint_) {
    throw InvalidArgument("element " + std::to_string(elements_.back()) +
                          " exceeds universe " + std::to_string(*universe_hint_));
  }
}

IntegerSet::IntegerSet(std::initializer_list<std::uint64_t> elements)
    : IntegerSet(std::vector<std::uint64_t>(elements)) {}

IntegerSet IntegerSet::from_unsorted(std::vector<std::uint64_t> elements,
                                     std::optional<std::uint64_t> universe_hint) {
  std::sort(elements.begin(), elements.end());
  return IntegerSet(std::move(elements), universe_hint);
}

bool IntegerSet::contains(std::uint64_t value) const {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

bool witness_is_valid(const Witness& witness, const IntegerSet& set) {
  if (witness.left.empty() || witness.right.empty()) return false;
  std::vector<std::uint64_t> all(witness.left);
  all.insert(all.end(), witness.right.begin(), witness.right.end());
  for (auto v : all) {
    if (!set.contains(v)) return false;
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  mpz_class lhs = 1, rhs = 1;
  for (auto v : witness.left) lhs *= BigCount(v).raw();
  for (auto v : witness.right) rhs *= BigCount(v).raw();
  return mpz_divisible_p(rhs.get_mpz_t(), lhs.get_mpz_t()) != 0;
}

IntegerSet read_set(std::istream& in) {
  std::vector<std::uint64_t> values;
  std::string line;
  std::size_t line_no = 0;
  bool in_header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (in_header && !line.empty() && line.front() == '#') continue;
    in_header = false;
    std::uint64_t v = 0;
    const char* first = line.data();
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (line.empty() || ec != std::errc() || ptr != last) {
      throw InvalidArgument("set file line " + std::to_string(line_no) +
                            ": expected one decimal integer, got '" + line + "'");
    }
    values.push_back(v);
  }
  return IntegerSet(std::move(values));
}

IntegerSet read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open set file: " + path);
  return read_set(in);
}

void write_set(std::ostream& out, const IntegerSet& set) {
  for (auto v : set) out << v << '\n';
}

}  // namespace divprod
