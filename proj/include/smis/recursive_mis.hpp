#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "smis/engine.hpp"
#include "smis/greedy.hpp"
#include "smis/rank.hpp"

namespace smis {

enum class RecursionVariant {
  Sleeping,  // base case: every participant joins
  Fast,      // base case: greedy for exactly leaf_rounds rounds
};

struct RecursionConfig {
  RecursionVariant variant = RecursionVariant::Sleeping;
  std::size_t n = 0;
  int depth = 0;           // K
  Round leaf_rounds = 0;   // 0 for Sleeping
};

/// Vertex of the recursion tree: bit i (from the root) is 1 for a right call.
struct CallPath {
  std::uint64_t bits = 0;
  std::uint8_t depth = 0;

  CallPath child(bool right) const {
    return {bits | (static_cast<std::uint64_t>(right) << depth), static_cast<std::uint8_t>(depth + 1)};
  }
  std::string to_string() const;
};

/// One node's view of one call it took part in.
struct LocalCall {
  CallPath path;
  int k = 0;
  bool in_left = false;
  bool in_right = false;
  bool isolated_join = false;
  bool eliminated = false;
  bool second_join = false;
};

/// Node program for the recursive sleeping MIS, both the full-depth variant
/// and the truncated one with greedy leaves.
///
/// The recursion is an explicit stack of frames. A level-k call starting at
/// round s occupies rounds s .. s+D(k)-1:
///   s                 first isolated-node detection
///   s+1 .. s+D(k-1)   left recursion (or asleep)
///   s+D(k-1)+1        synchronization / elimination
///   s+D(k-1)+2        second isolated-node detection
///   s+D(k-1)+3 ..     right recursion (or asleep)
/// with D(k) = 2D(k-1) + 3.
class RecursiveMisProgram final : public NodeProgram {
 public:
  RecursiveMisProgram(NodeId self, BitTape tape, const RecursionConfig& config,
                      std::uint64_t leaf_rank = 0);

  Action start() override;
  void send(Round now, Outbox& out) override;
  Action receive(Round now, std::span<const Message> inbox) override;

  MisStatus status() const noexcept { return status_; }
  /// Truncated variant only: the greedy leaf closed with this node undecided.
  bool leaf_failed() const noexcept { return pinned_; }
  std::span<const LocalCall> calls() const noexcept { return calls_; }

 private:
  enum class Phase { Detect, Sync, SecondDetect, Leaf };
  struct Frame {
    int k;
    Round start;
    CallPath path;
    bool right = false;  // which child is running / slept through
    std::size_t log_index;
  };

  Round duration(int k) const { return durations_[static_cast<std::size_t>(k)]; }
  bool undecided() const noexcept { return status_ == MisStatus::Unknown && !pinned_; }
  Action enter_call(int k, Round start, CallPath path);
  Action child_done(Round end);

  NodeId self_;
  BitTape tape_;
  RecursionConfig config_;
  std::vector<Round> durations_;
  MisStatus status_ = MisStatus::Unknown;
  bool pinned_ = false;
  Phase phase_ = Phase::Detect;
  std::vector<Frame> stack_;
  GreedyCore leaf_;
  Round leaf_start_ = 0;
  std::vector<LocalCall> calls_;
};

std::unique_ptr<RecursiveMisProgram> sleeping_mis_program(std::size_t n, NodeId node, BitTape tape,
                                                          int depth);
std::unique_ptr<RecursiveMisProgram> fast_sleeping_mis_program(std::size_t n, NodeId node,
                                                               BitTape tape, int depth, int c,
                                                               std::uint64_t leaf_rank);

/// Merges per-node call logs into one record per recursion-tree vertex, in
/// preorder (root, left subtree, right subtree).
std::vector<CallRecord> aggregate_calls(std::span<const RecursiveMisProgram* const> programs);

}  // namespace smis
