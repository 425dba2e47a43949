#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "smis/types.hpp"

namespace smis {

/// Random bits X_1..X_K of one node, K <= 64. X_i is stored in bit i-1.
class BitTape {
 public:
  static constexpr int kMaxLength = 64;

  BitTape() = default;
  BitTape(std::uint64_t bits, int length);

  /// X_1..X_K drawn from derive_rng(seed, node, Tape).
  static BitTape draw(std::uint64_t seed, NodeId node, int length);

  int length() const noexcept { return length_; }
  /// X_i, 1 <= i <= length.
  int bit(int i) const;
  std::uint64_t bits() const noexcept { return bits_; }

  /// (X_k, ..., X_1) packed with X_k as the most significant bit. Comparing
  /// prefixes of equal k numerically is the same as comparing k-ranks.
  std::uint64_t prefix(int k) const;

  friend bool operator==(const BitTape&, const BitTape&) = default;

 private:
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

/// The k-rank (X_k, X_{k-1}, ..., X_1, -1), compared lexicographically.
class KRank {
 public:
  explicit KRank(std::vector<int> elements) : elements_(std::move(elements)) {}

  const std::vector<int>& elements() const noexcept { return elements_; }

  friend std::strong_ordering operator<=>(const KRank& a, const KRank& b) {
    return std::lexicographical_compare_three_way(a.elements_.begin(), a.elements_.end(),
                                                  b.elements_.begin(), b.elements_.end());
  }
  friend bool operator==(const KRank&, const KRank&) = default;

 private:
  std::vector<int> elements_;
};

/// Throws ParameterError when k > tape length or k < 0.
KRank k_rank(const BitTape& tape, int k);

/// T(k) = 3(2^k - 1): rounds taken by a level-k call of the sleeping algorithm.
Round t_schedule(int k);

/// T'(k) = 2^k (c*ceil(log2 n) + 3) - 3: the truncated variant, whose level-0
/// calls run greedy for exactly c*ceil(log2 n) rounds.
Round fast_schedule(int k, std::size_t n, int c);

/// Shared closed form 2^k (leaf + 3) - 3 for recursion T(k) = 2T(k-1) + 3,
/// T(0) = leaf. Throws ParameterError on int64 overflow.
Round recursion_schedule(int k, Round leaf_rounds);

/// ceil(3 log2 n): smallest K with 2^K >= n^3.
int sleeping_depth(std::size_t n);

/// 1 / log2(4/3).
inline constexpr double kEll = 2.4094208396532095;

/// max(1, ceil(ell * log2 log2 n)); 1 for n < 4.
int fast_depth(std::size_t n);

}  // namespace smis
