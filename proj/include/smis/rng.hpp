#pragma once

#include <cstdint>

#include "smis/types.hpp"

namespace smis {

enum class StreamTag : std::uint64_t { Tape = 1, Rank = 2, Luby = 3, Graph = 4 };

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based SplitMix64 stream. Draw i is a pure function of (key, i),
/// so streams are reproducible across platforms and can be indexed directly.
class RngStream {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr RngStream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t at(std::uint64_t index) const noexcept {
    return mix64(key_ + (index + 1) * kGamma);
  }
  constexpr std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Independent stream for (seed, node, tag).
RngStream derive_rng(std::uint64_t seed, NodeId node, StreamTag tag) noexcept;

/// Bernoulli(p) decided by a single 64-bit draw; exact at p = 0 and p = 1.
constexpr bool bernoulli(std::uint64_t draw, double p) noexcept {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return static_cast<double>(draw >> 11) * 0x1.0p-53 < p;
}

}  // namespace smis
