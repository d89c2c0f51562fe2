#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "divprod/errors.hpp"
#include "divprod/property.hpp"
#include "divprod/rng.hpp"
#include "oracle.hpp"

using namespace divprod;

TEST_CASE("P_2 examples") {
  auto r = possesses_ph({2, 3, 4}, 2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->pivot() == 2);
  CHECK(r.witness->cofactors() == std::vector<std::uint64_t>{3, 4});

  r = possesses_ph({6, 10, 15}, 2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->pivot() == 6);
  CHECK(r.witness->cofactors() == std::vector<std::uint64_t>{10, 15});

  r = possesses_ph({2, 3, 5}, 2);
  CHECK(r.holds);
  CHECK_FALSE(r.witness);
}

TEST_CASE("sets no larger than h hold vacuously") {
  CHECK(possesses_ph({}, 1).holds);
  CHECK(possesses_ph({1, 2}, 2).holds);
  CHECK(possesses_ph({1, 2, 4}, 3).holds);
  CHECK_THROWS_AS(possesses_ph({1, 2}, 0), InvalidArgument);
}

TEST_CASE("witness agrees with brute force on every subset of [12]") {
  for (unsigned h = 1; h <= 4; ++h) {
    for (std::uint64_t mask = 0; mask < (1u << 12); ++mask) {
      const auto values = oracle::subset_of(mask);
      const IntegerSet set(values);
      const auto got = possesses_ph(set, h);
      const auto want = oracle::brute_ph_witness(values, h);
      REQUIRE(got.holds == !want.has_value());
      REQUIRE(holds_ph(set.elements(), h) == got.holds);
      if (want) {
        REQUIRE(got.witness == want);
        REQUIRE(witness_is_valid(*got.witness, set));
      }
    }
  }
}

TEST_CASE("random larger sets agree with brute force") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint64_t> values;
    const auto size = 4 + rng.below(9);
    while (values.size() < size) {
      const auto v = 2 + rng.below(3000);
      if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
    const auto set = IntegerSet::from_unsorted(values);
    for (unsigned h = 2; h <= 3; ++h) {
      const auto got = possesses_ph(set, h);
      const auto want = oracle::brute_ph_witness(set.values(), h);
      REQUIRE(got.holds == !want.has_value());
      if (want) REQUIRE(got.witness == want);
    }
  }
}

TEST_CASE("large elements do not overflow") {
  const std::uint64_t big = (1ULL << 62) + 1;  // divisible by 5
  const IntegerSet set{5, 1ULL << 40, big};
  const auto r = possesses_ph(set, 2);
  CHECK_FALSE(r.holds);
  CHECK(witness_is_valid(*r.witness, set));
  CHECK(possesses_ph({(1ULL << 63) + 3, (1ULL << 63) + 5, (1ULL << 63) + 7}, 2).holds ==
        oracle::brute_holds({(1ULL << 63) + 3, (1ULL << 63) + 5, (1ULL << 63) + 7}, 2));
}

TEST_CASE("P_{1,h} agrees with P_h") {
  for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
    const IntegerSet set(oracle::subset_of(mask));
    for (unsigned h = 1; h <= 3; ++h) {
      const auto rs = possesses_rs(set, 1, h);
      REQUIRE(rs.holds == possesses_ph(set, h).holds);
      if (rs.witness) REQUIRE(witness_is_valid(*rs.witness, set));
    }
  }
}

TEST_CASE("P_{r,s} general cases") {
  // 2*3 | 6*... needs distinct elements: {2,3,6,5}: 2*3 | 6*5.
  const auto r = possesses_rs({2, 3, 5, 6}, 2, 2);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(witness_is_valid(*r.witness, {2, 3, 5, 6}));
  CHECK(possesses_rs({2, 3, 5, 7}, 2, 2).holds);
  CHECK(possesses_rs({2, 3}, 2, 2).holds);
  CHECK_THROWS_AS(possesses_rs({2, 3}, 0, 1), InvalidArgument);
  std::vector<std::uint64_t> many(200);
  for (std::uint64_t i = 0; i < many.size(); ++i) many[i] = i + 1;
  CHECK_THROWS_AS(possesses_rs(IntegerSet(many), 3, 3), ResourceLimit);
}

TEST_CASE("P_h is monotone in h on sets of at least h + 2 elements") {
  for (std::uint64_t mask = 0; mask < (1u << 11); ++mask) {
    const IntegerSet set(oracle::subset_of(mask));
    for (unsigned h = 1; h <= 3; ++h) {
      if (set.size() >= h + 2 && holds_ph(set.elements(), h + 1)) REQUIRE(holds_ph(set.elements(), h));
    }
  }
  // A failing (h+1)-set holds P_{h+1} vacuously.
  CHECK(holds_ph(std::vector<std::uint64_t>{2, 3, 6}, 3));
  CHECK_FALSE(holds_ph(std::vector<std::uint64_t>{2, 3, 6}, 2));
}

TEST_CASE("integer set validation and io") {
  CHECK_THROWS_AS(IntegerSet({3, 2}), InvalidArgument);
  CHECK_THROWS_AS(IntegerSet({2, 2}), InvalidArgument);
  CHECK_THROWS_AS(IntegerSet({0, 2}), InvalidArgument);
  CHECK_THROWS_AS(IntegerSet::from_unsorted({4, 2, 4}), InvalidArgument);
  CHECK(IntegerSet::from_unsorted({4, 2, 9}) == IntegerSet{2, 4, 9});

  std::istringstream in("# header\n2\n3\n4\n");
  CHECK(read_set(in) == IntegerSet{2, 3, 4});
  std::istringstream bad("2\nx\n");
  CHECK_THROWS_AS(read_set(bad), InvalidArgument);
  std::istringstream unsorted("3\n2\n");
  CHECK_THROWS_AS(read_set(unsorted), InvalidArgument);
  std::ostringstream out;
  write_set(out, {5, 7});
  CHECK(out.str() == "5\n7\n");
}
