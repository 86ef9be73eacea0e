#pragma once

#include <cstdint>
#include <random>

namespace tableau2d::detail {

// mt19937_64 with a portable bounded mapping: std::uniform_int_distribution
// is implementation-defined, which would make seeded corpora differ across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % n;
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tableau2d::detail
