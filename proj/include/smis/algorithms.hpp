#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "smis/engine.hpp"
#include "smis/graph.hpp"
#include "smis/rank.hpp"
#include "smis/recursive_mis.hpp"

namespace smis {

enum class Algorithm { Sleeping, Fast, Greedy, Luby };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct AlgoParams {
  Algorithm algorithm = Algorithm::Sleeping;
  /// Overrides K for the recursive variants.
  std::optional<int> depth;
  /// Greedy leaf window is c * ceil(log2 n) rounds.
  int c = 6;
};

struct RunResult {
  Trace trace;
  int depth = 0;          // K used by the recursive variants, else 0
  Round leaf_rounds = 0;  // truncated variant only
  std::vector<BitTape> tapes;
  std::vector<std::uint64_t> ranks;  // greedy ranks, or leaf ranks of the truncated variant
  bool rank_tie = false;
  /// Sleeping variant: some base-case call had two or more participants.
  bool base_multiplicity = false;
  std::size_t leaf_failures = 0;
};

/// Depth the recursive variants use on n nodes, honoring the override.
int recursion_depth(const AlgoParams& params, std::size_t n);

/// Runs one seeded simulation. Throws TimeoutError when the round cap is hit.
RunResult run_algorithm(const Graph& g, const AlgoParams& params, std::uint64_t seed,
                        const EngineConfig& engine = {});

/// Recursive variants with caller-supplied randomness. `leaf_ranks` is used by
/// the truncated variant only and may be empty otherwise.
RunResult run_recursive(const Graph& g, RecursionVariant variant, std::vector<BitTape> tapes,
                        int depth, int c, std::vector<std::uint64_t> leaf_ranks,
                        const EngineConfig& engine = {});

RunResult run_greedy(const Graph& g, std::vector<std::uint64_t> ranks, const EngineConfig& engine = {});

}  // namespace smis
