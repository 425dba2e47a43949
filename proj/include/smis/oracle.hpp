#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smis/algorithms.hpp"
#include "smis/engine.hpp"
#include "smis/graph.hpp"
#include "smis/rank.hpp"
#include "smis/rational.hpp"

namespace smis {

struct Verdict {
  enum class Kind { Valid, NotIndependent, NotMaximal, Undecided };
  Kind kind = Kind::Valid;
  NodeId u = 0;  // offending edge endpoint, undominated node, or undecided node
  NodeId v = 0;  // second endpoint for NotIndependent

  bool valid() const noexcept { return kind == Kind::Valid; }
  /// Machine name: valid, not_independent, not_maximal, undecided.
  std::string name() const;
  std::string describe() const;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// O(n + m) MIS check. Independence is checked first, then domination
/// (a non-True node without a True neighbor), then undecided outputs.
Verdict check_mis(const Graph& g, std::span<const MisStatus> outputs);

/// Sequential greedy over `order`: a node joins iff no earlier neighbor joined.
/// Returns the joined nodes ascending. Throws ParameterError unless `order`
/// is a permutation of 0..n-1.
std::vector<NodeId> sequential_greedy(const Graph& g, std::span<const NodeId> order);

struct RankOrder {
  std::vector<NodeId> order;                       // strictly decreasing K-rank
  std::vector<std::pair<NodeId, NodeId>> ties;     // colliding pairs (u < v)

  bool ok() const noexcept { return ties.empty(); }
};

/// Nodes by decreasing K-rank. When two full tapes coincide the order is not
/// strict and `ties` lists every colliding pair.
RankOrder rank_order(std::span<const BitTape> tapes, int depth);

/// Decreasing (X_K..X_1, leaf rank, node ID): the order the truncated variant
/// realizes when every leaf finishes in its window.
std::vector<NodeId> composite_order(std::span<const BitTape> tapes, int depth,
                                    std::span<const std::uint64_t> leaf_ranks);

/// Decreasing (rank, ID).
std::vector<NodeId> greedy_order(std::span<const std::uint64_t> ranks);

std::vector<NodeId> mis_members(std::span<const MisStatus> outputs);

struct EquivalenceReport {
  enum class Outcome { Match, Mismatch, SkippedTie, SkippedInvalid };
  Outcome outcome = Outcome::Match;
  std::vector<NodeId> algorithm_set;
  std::vector<NodeId> oracle_set;
  NodeId first_difference = 0;

  std::string describe() const;
};

/// Compares a finished run against sequential greedy under the order the
/// algorithm is supposed to realize (K-rank, composite, or greedy rank).
EquivalenceReport equivalence_check(const Graph& g, Algorithm algorithm, const RunResult& run);

/// Convenience: runs `params` with `seed`, then checks.
EquivalenceReport equivalence_check(const Graph& g, const AlgoParams& params, std::uint64_t seed);

/// Centralized re-implementation of the recursion over explicit node sets,
/// used as an oracle for the node programs. leaf_rounds == 0 selects the
/// all-join base case; otherwise level-0 calls run floor(leaf_rounds / 2)
/// synchronous greedy iterations on leaf_ranks.
struct ReferenceRun {
  std::vector<MisStatus> outputs;
  std::vector<CallRecord> records;  // preorder by path
};
ReferenceRun reference_recursive_mis(const Graph& g, std::span<const BitTape> tapes, int depth,
                                     std::int64_t leaf_rounds = 0,
                                     std::span<const std::uint64_t> leaf_ranks = {});

struct SampleStat {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(count)
  std::size_t count = 0;
};
SampleStat sample_stat(std::span<const double> xs);

struct LevelZ {
  int i = 0;          // distance from the root; level k = K - i
  SampleStat z;
  double bound = 0.0; // (3/4)^i * n
  bool violation = false;
};

struct LevelRatios {
  int k = 0;
  SampleStat left_ratio;   // |L|/|U| summed over the level's calls
  SampleStat right_ratio;  // |R|/|U|
};

struct PruningReport {
  std::size_t seeds = 0;
  std::size_t n = 0;
  int depth = 0;
  SampleStat root_left;
  SampleStat root_right;
  bool root_left_violation = false;   // mean > n/2 + 3 SE
  bool root_right_violation = false;  // mean > n/4 + 3 SE
  std::vector<LevelRatios> levels;    // k = K .. 1
  std::vector<LevelZ> z;              // i = 0 .. K
  bool violation() const;
};

/// Statistics of the left/right recursion sizes over independent seeds.
/// Throws ParameterError for fewer than two seeds.
PruningReport pruning_stats(std::span<const std::vector<CallRecord>> per_seed, std::size_t n, int depth);

struct ExactExpectation {
  Rational left;
  Rational right;
  std::uint64_t tapes = 0;
  std::size_t root_size = 0;
};

/// Exact root E[|L|] and E[|R|] by enumerating all 2^(nK) tape assignments.
/// Throws ParameterError when n*K > 24.
ExactExpectation exact_expectation(const Graph& g, int depth);

}  // namespace smis
