#pragma once

#include <cmath>
#include <cstdint>

namespace rsl {

/// SplitMix64 finalizer; also the documented hash used for stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based generator: the output sequence is the SplitMix64 stream
/// started at a derived key, so any (seed, stream) pair addresses an
/// independent substream without shared state.
///
/// Stream derivation rule (documented contract):
///   key(seed, stream) = mix64(mix64(seed) ^ mix64(stream))
/// Per-sample substreams use stream = sample index; per-n sweep seeds use
/// seed_n = seed ^ mix64(n).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(mix64(seed) ^ mix64(stream))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in (0,1]; never returns 0 so log(u) is safe.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  bool bernoulli(double p) { return next_unit() <= p; }

  /// Geometric skip: the number of failures before the next success of a
  /// Bernoulli(p) scan, so `pos += 1 + skip` walks the success positions.
  std::uint64_t geometric_skip(double p, double log1mp) {
    if (p >= 1.0) return 0;
    const double u = next_unit();
    const double g = std::log(u) / log1mp;
    return g >= 9.2e18 ? static_cast<std::uint64_t>(9.2e18) : static_cast<std::uint64_t>(g);
  }

 private:
  std::uint64_t state_;
};

}  // namespace rsl
