#include "smis/algorithms.hpp"

#include <algorithm>
#include <memory>

#include "smis/errors.hpp"
#include "smis/greedy.hpp"
#include "smis/luby.hpp"

namespace smis {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Sleeping: return "sleeping";
    case Algorithm::Fast: return "fast";
    case Algorithm::Greedy: return "greedy";
    case Algorithm::Luby: return "luby";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Sleeping, Algorithm::Fast, Algorithm::Greedy, Algorithm::Luby}) {
    if (to_string(a) == name) return a;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

int recursion_depth(const AlgoParams& params, std::size_t n) {
  if (params.depth) {
    // Deeper schedules overflow 64-bit round counters.
    if (*params.depth < 0 || *params.depth > 62) {
      throw ConfigError("K must be in [0, 62]");
    }
    return *params.depth;
  }
  switch (params.algorithm) {
    case Algorithm::Sleeping: return sleeping_depth(n);
    case Algorithm::Fast: return fast_depth(n);
    default: return 0;
  }
}

namespace {

template <typename T>
bool has_duplicates(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) != values.end();
}

}  // namespace

RunResult run_recursive(const Graph& g, RecursionVariant variant, std::vector<BitTape> tapes,
                        int depth, int c, std::vector<std::uint64_t> leaf_ranks,
                        const EngineConfig& engine) {
  const auto n = g.n();
  if (tapes.size() != n) throw ParameterError("one tape per node required");
  if (variant == RecursionVariant::Fast && leaf_ranks.size() != n) {
    throw ParameterError("one leaf rank per node required");
  }
  std::vector<std::unique_ptr<RecursiveMisProgram>> owned;
  owned.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    owned.push_back(variant == RecursionVariant::Sleeping
                        ? sleeping_mis_program(n, v, tapes[v], depth)
                        : fast_sleeping_mis_program(n, v, tapes[v], depth, c, leaf_ranks[v]));
  }
  std::vector<NodeProgram*> programs(n);
  for (std::size_t i = 0; i < n; ++i) programs[i] = owned[i].get();

  RunResult result;
  result.trace = simulate(g, programs, engine);
  std::vector<const RecursiveMisProgram*> views(n);
  for (std::size_t i = 0; i < n; ++i) views[i] = owned[i].get();
  result.trace.call_records = aggregate_calls(views);
  result.depth = depth;
  result.leaf_rounds = variant == RecursionVariant::Fast ? static_cast<Round>(c) * ceil_log2(n) : 0;

  std::vector<std::uint64_t> keys(n);
  for (NodeId v = 0; v < n; ++v) keys[v] = tapes[v].prefix(depth);
  if (variant == RecursionVariant::Sleeping) {
    result.rank_tie = has_duplicates(keys);
    result.base_multiplicity = std::any_of(result.trace.call_records.begin(), result.trace.call_records.end(),
                                           [](const CallRecord& r) { return r.k == 0 && r.size_U >= 2; });
  } else {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> composite(n);
    for (NodeId v = 0; v < n; ++v) composite[v] = {keys[v], leaf_ranks[v]};
    result.rank_tie = has_duplicates(composite);
    result.leaf_failures = static_cast<std::size_t>(
        std::count_if(owned.begin(), owned.end(), [](const auto& p) { return p->leaf_failed(); }));
  }
  result.tapes = std::move(tapes);
  result.ranks = std::move(leaf_ranks);
  return result;
}

RunResult run_greedy(const Graph& g, std::vector<std::uint64_t> ranks, const EngineConfig& engine) {
  const auto n = g.n();
  if (ranks.size() != n) throw ParameterError("one rank per node required");
  std::vector<std::unique_ptr<NodeProgram>> owned;
  owned.reserve(n);
  for (NodeId v = 0; v < n; ++v) owned.push_back(greedy_mis_program(n, v, ranks[v]));
  std::vector<NodeProgram*> programs(n);
  for (std::size_t i = 0; i < n; ++i) programs[i] = owned[i].get();

  RunResult result;
  result.trace = simulate(g, programs, engine);
  result.rank_tie = has_duplicates(ranks);
  result.ranks = std::move(ranks);
  return result;
}

RunResult run_algorithm(const Graph& g, const AlgoParams& params, std::uint64_t seed,
                        const EngineConfig& engine) {
  const auto n = g.n();
  if (params.c < 1) throw ConfigError("c must be >= 1");
  switch (params.algorithm) {
    case Algorithm::Sleeping:
    case Algorithm::Fast: {
      const int depth = recursion_depth(params, n);
      std::vector<BitTape> tapes(n);
      for (NodeId v = 0; v < n; ++v) tapes[v] = BitTape::draw(seed, v, depth);
      if (params.algorithm == Algorithm::Sleeping) {
        return run_recursive(g, RecursionVariant::Sleeping, std::move(tapes), depth, params.c, {}, engine);
      }
      return run_recursive(g, RecursionVariant::Fast, std::move(tapes), depth, params.c,
                           draw_ranks(n, seed), engine);
    }
    case Algorithm::Greedy:
      return run_greedy(g, draw_ranks(n, seed), engine);
    case Algorithm::Luby: {
      std::vector<std::unique_ptr<NodeProgram>> owned;
      owned.reserve(n);
      for (NodeId v = 0; v < n; ++v) owned.push_back(luby_program(n, v, seed));
      std::vector<NodeProgram*> programs(n);
      for (std::size_t i = 0; i < n; ++i) programs[i] = owned[i].get();
      RunResult result;
      result.trace = simulate(g, programs, engine);
      return result;
    }
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace smis
