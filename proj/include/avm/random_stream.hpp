#pragma once

#include <cstdint>
#include <random>

namespace avm {

/// Seeded random source with a fixed, platform-independent output sequence.
///
/// Bits come from std::mt19937_64 (sequence fixed by the standard). Integer
/// ranges use Lemire's multiply-shift rejection method, reals take the top
/// 53 bits, exponentials invert the CDF. No std::*_distribution is used, so
/// streams agree across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform real in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Exponential variate with the given positive rate.
  double exponential(double rate);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Seed for replicate `run` of configuration `config`: chained SplitMix64
/// over (base, config, run). Independent of how many other configs exist.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t config, std::uint64_t run) noexcept {
  return mix64(mix64(mix64(base) ^ config) ^ run);
}

}  // namespace avm
