#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace numgram {

/// Seedable random source with hand-specified integer reduction.
///
/// std::mt19937_64 has a portable, standardized output sequence, but
/// std::uniform_int_distribution does not; bounded draws here use rejection
/// sampling so identical seeds give identical bytes on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  std::int64_t nextInt(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span + 1) % span;
    std::uint64_t draw = engine_();
    while (draw > limit) draw = engine_();
    return lo + static_cast<std::int64_t>(draw % span);
  }

  std::size_t nextIndex(std::size_t size) {
    return static_cast<std::size_t>(nextInt(0, static_cast<std::int64_t>(size) - 1));
  }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[nextIndex(items.size())];
  }

  /// Fisher-Yates with draws from nextIndex, so shuffles are seed-stable too.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = nextIndex(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mixSeed(std::uint64_t seed);

/// Sub-seed derivation: hashes a label into the seed so that e.g. the
/// lexicon draw and the equation draw of one puzzle never share a stream.
std::uint64_t deriveSeed(std::uint64_t seed, const std::string& tag);

}  // namespace numgram
