#include "smis/rank.hpp"

#include <cmath>
#include <limits>

#include "smis/engine.hpp"
#include "smis/errors.hpp"
#include "smis/rng.hpp"

namespace smis {

__extension__ using i128 = __int128;

BitTape::BitTape(std::uint64_t bits, int length) : bits_(bits), length_(length) {
  if (length < 0 || length > kMaxLength) throw ParameterError("tape length must be in [0, 64]");
  if (length < 64) bits_ &= (std::uint64_t{1} << length) - 1;
}

BitTape BitTape::draw(std::uint64_t seed, NodeId node, int length) {
  auto rng = derive_rng(seed, node, StreamTag::Tape);
  return BitTape(rng.next(), length);
}

int BitTape::bit(int i) const {
  if (i < 1 || i > length_) throw ParameterError("tape index out of range");
  return static_cast<int>((bits_ >> (i - 1)) & 1U);
}

std::uint64_t BitTape::prefix(int k) const {
  if (k < 0 || k > length_) throw ParameterError("rank level out of range");
  if (k == 64) return bits_;
  return bits_ & ((std::uint64_t{1} << k) - 1);
}

KRank k_rank(const BitTape& tape, int k) {
  if (k < 0 || k > tape.length()) {
    throw ParameterError("k-rank level " + std::to_string(k) + " outside [0, " +
                         std::to_string(tape.length()) + "]");
  }
  std::vector<int> elements;
  elements.reserve(static_cast<std::size_t>(k) + 1);
  for (int i = k; i >= 1; --i) elements.push_back(tape.bit(i));
  elements.push_back(-1);
  return KRank(std::move(elements));
}

Round recursion_schedule(int k, Round leaf_rounds) {
  if (k < 0) throw ParameterError("schedule level must be >= 0");
  if (k > 62) throw ParameterError("schedule level too large");
  const i128 v = (static_cast<i128>(1) << k) * (static_cast<i128>(leaf_rounds) + 3) - 3;
  if (v > static_cast<i128>(std::numeric_limits<Round>::max())) {
    throw ParameterError("schedule overflows 64-bit rounds");
  }
  return static_cast<Round>(v);
}

Round t_schedule(int k) { return recursion_schedule(k, 0); }

Round fast_schedule(int k, std::size_t n, int c) {
  if (n < 1) throw ParameterError("n must be >= 1");
  return recursion_schedule(k, static_cast<Round>(c) * ceil_log2(n));
}

int sleeping_depth(std::size_t n) {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (n >= (std::size_t{1} << 21)) throw ParameterError("n too large for a 64-bit tape");
  const std::uint64_t cube = static_cast<std::uint64_t>(n) * n * n;
  return static_cast<int>(ceil_log2(cube));
}

int fast_depth(std::size_t n) {
  if (n < 4) return 1;
  const double k = std::ceil(kEll * std::log2(std::log2(static_cast<double>(n))));
  return std::max(1, static_cast<int>(k));
}

}  // namespace smis
