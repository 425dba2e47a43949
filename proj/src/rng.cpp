#include "smis/rng.hpp"

namespace smis {

std::uint64_t RngStream::uniform_below(std::uint64_t bound) noexcept {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = -bound % bound;  // == 2^64 mod bound
  for (;;) {
    const std::uint64_t x = next();
    if (x >= limit) return x % bound;
  }
}

RngStream derive_rng(std::uint64_t seed, NodeId node, StreamTag tag) noexcept {
  std::uint64_t key = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  key = mix64(key + (static_cast<std::uint64_t>(node) + 1) * RngStream::kGamma);
  key = mix64(key ^ (static_cast<std::uint64_t>(tag) * 0xd6e8feb86659fd93ULL));
  return RngStream(key);
}

}  // namespace smis
