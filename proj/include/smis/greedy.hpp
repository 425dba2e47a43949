#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "smis/engine.hpp"

namespace smis {

/// Upper bound (exclusive) of random ranks: n^3.
std::uint64_t rank_bound(std::size_t n);

/// Ranks drawn from derive_rng(seed, node, Rank), uniform in [0, n^3).
std::vector<std::uint64_t> draw_ranks(std::size_t n, std::uint64_t seed);

/// Round logic of the distributed randomized greedy MIS, shared by the
/// standalone program and the leaves of the truncated recursion.
///
/// Relative to the first round f: round f exchanges ranks; afterwards odd
/// offsets are join rounds (local maxima of (rank, ID) among undecided
/// neighbors join and announce it) and even offsets are out rounds (nodes that
/// just lost announce it so neighbors drop them).
class GreedyCore {
 public:
  GreedyCore() = default;
  GreedyCore(NodeId self, std::uint64_t rank, std::uint8_t rank_bits)
      : self_(self), rank_(rank), rank_bits_(rank_bits) {}

  void begin(Round first);
  void send(Round now, MisStatus& status, Outbox& out);
  /// True once this node has nothing left to do in the greedy run.
  bool receive(Round now, std::span<const Message> inbox, MisStatus& status);

 private:
  bool is_local_max() const;

  NodeId self_ = 0;
  std::uint64_t rank_ = 0;
  std::uint8_t rank_bits_ = 0;
  Round first_ = 0;
  std::vector<std::pair<std::uint64_t, NodeId>> undecided_;
  bool will_join_ = false;
  bool pending_out_ = false;
};

class GreedyProgram final : public NodeProgram {
 public:
  GreedyProgram(std::size_t n, NodeId self, std::uint64_t rank);

  Action start() override;
  void send(Round now, Outbox& out) override;
  Action receive(Round now, std::span<const Message> inbox) override;

 private:
  GreedyCore core_;
  MisStatus status_ = MisStatus::Unknown;
};

std::unique_ptr<NodeProgram> greedy_mis_program(std::size_t n, NodeId node, std::uint64_t rank);

}  // namespace smis
