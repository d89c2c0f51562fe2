#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace divprod {

inline constexpr std::uint64_t kDefaultSeed = 20190101;

// Seeded generator whose output sequence is fixed by the standard
// (mt19937_64) with a portable bounded draw, so runs reproduce across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % bound;
    }
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace divprod
