#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace shortlist {

// All randomness in the project flows through this wrapper. The engine is
// std::mt19937_64 (its output sequence is fixed by the C++ standard) and the
// reductions below use only raw engine words, so streams are identical on
// every conforming platform. std::*_distribution is deliberately not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound), bound >= 1. Rejection sampling on raw words.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  // The top `width` bits of one engine word; width in [0, 64].
  std::uint64_t bits(int width) {
    if (width <= 0) return 0;
    const std::uint64_t v = engine_();
    return width >= 64 ? v : v >> (64 - width);
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive child seeds from a master seed and a
// list of integer tags.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t t : tags) h = mix64(h ^ t);
  return h;
}

}  // namespace shortlist
