#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace pivotree {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/**
 * Counter-based 64-bit generator.
 *
 * The i-th output (i = 1, 2, ...) of a generator with key k is
 * mix64(k + i * 0x9e3779b97f4a7c15), which is exactly SplitMix64 seeded with k.
 * Being a pure function of (key, counter), the stream is reproducible in any
 * language. split(tag) derives an independent child stream whose key is
 * mix64(k ^ mix64(tag + 0x632be59bd9b4e019)).
 *
 * Satisfies UniformRandomBitGenerator, but callers that need cross-platform
 * reproducibility should use below() / uniform01() rather than <random>
 * distributions, whose algorithms are implementation-defined.
 */
class CounterRng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return mix64(key_ + kGamma * ++counter_); }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  constexpr CounterRng split(std::uint64_t tag) const {
    return CounterRng(mix64(key_ ^ mix64(tag + 0x632be59bd9b4e019ULL)));
  }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

/// Fisher-Yates shuffle driven by CounterRng::below, reproducible across standard libraries.
template <typename T>
void shuffle(std::span<T> items, CounterRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace pivotree
