#pragma once

#include <cstdint>
#include <vector>

namespace dirlp {

/// SplitMix64 pseudo-random generator.
///
/// Every random decision in the library (splits, negative sampling,
/// candidate sets, dropout masks, parameter init) flows through this
/// generator so that results are bit-reproducible across platforms and
/// across runs. The algorithm is the public-domain SplitMix64 finalizer
/// (Steele, Lea & Flood, "Fast splittable pseudorandom number generators").
///
/// Derived conveniences are pinned here as part of the reproducibility
/// contract:
///  - uniform():     top 53 bits of next() scaled into [0, 1)
///  - bounded(n):    128-bit multiply-shift of next() (Lemire reduction)
///  - shuffle():     Fisher-Yates driven by bounded()
///  - derive_seed(): one scramble round per mixed-in word, for splitting
///    independent streams keyed by (seed, index...) tuples
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be nonzero.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

/// One SplitMix64 scramble round applied to x (stateless).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent stream seed from a base seed and one or two keys.
/// Used for per-fold, per-positive and per-epoch streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
  return mix64(mix64(seed) ^ mix64(a * 0x9e3779b97f4a7c15ULL + 1));
}
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

}  // namespace dirlp
