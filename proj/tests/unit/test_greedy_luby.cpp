#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "smis/algorithms.hpp"
#include "smis/graph.hpp"
#include "smis/greedy.hpp"
#include "smis/oracle.hpp"

using namespace smis;

namespace {

Graph gen(GraphFamily f, std::size_t n, double p, std::uint64_t seed) {
  GraphSpec s;
  s.family = f;
  s.n = n;
  s.p = p;
  s.seed = seed;
  return generate(s);
}

std::vector<NodeId> members(const Trace& t) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < t.outputs.size(); ++v) {
    if (t.outputs[v] == MisStatus::True) out.push_back(v);
  }
  return out;
}

// Lexicographically-first MIS under decreasing (rank, ID), computed by
// repeatedly taking the best remaining node.
std::vector<NodeId> lfmis(const Graph& g, const std::vector<std::uint64_t>& ranks) {
  std::vector<bool> removed(g.n());
  std::vector<NodeId> out;
  for (;;) {
    std::optional<NodeId> best;
    for (NodeId v = 0; v < g.n(); ++v) {
      if (removed[v]) continue;
      if (!best || std::pair(ranks[v], v) > std::pair(ranks[*best], *best)) best = v;
    }
    if (!best) break;
    out.push_back(*best);
    removed[*best] = true;
    for (NodeId w : g.neighbors(*best)) removed[w] = true;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("greedy hand examples") {
  const auto path = gen(GraphFamily::Path, 3, 0, 0);
  CHECK(members(run_greedy(path, {3, 2, 1}).trace) == std::vector<NodeId>{0, 2});
  CHECK(members(run_greedy(path, {1, 3, 2}).trace) == std::vector<NodeId>{1});

  // Cycle 0-1-2-3-0 with ranks (4,1,3,2): nodes 0 and 2 are both local maxima,
  // so one iteration (rank exchange, join, out) settles everything.
  const auto cycle = gen(GraphFamily::Cycle, 4, 0, 0);
  const auto r = run_greedy(cycle, {4, 1, 3, 2});
  CHECK(members(r.trace) == std::vector<NodeId>{0, 2});
  CHECK(r.trace.total_rounds == 3);

  // Decreasing ranks along a path need one iteration per two nodes.
  const auto long_path = gen(GraphFamily::Path, 8, 0, 0);
  const auto chain = run_greedy(long_path, {8, 7, 6, 5, 4, 3, 2, 1});
  CHECK(members(chain.trace) == std::vector<NodeId>{0, 2, 4, 6});
}

TEST_CASE("greedy ties break by ID") {
  const auto g = gen(GraphFamily::Path, 2, 0, 0);
  const auto r = run_greedy(g, {5, 5});
  CHECK(members(r.trace) == std::vector<NodeId>{1});
}

TEST_CASE("greedy equals the lexicographically first MIS") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (const auto& g : {gen(GraphFamily::Gnp, 60, 0.1, seed), gen(GraphFamily::Tree, 50, 0, seed),
                          gen(GraphFamily::Cycle, 31, 0, seed), gen(GraphFamily::Complete, 12, 0, seed)}) {
      const auto ranks = draw_ranks(g.n(), seed);
      const auto r = run_greedy(g, ranks);
      CHECK(check_mis(g, r.trace.outputs).valid());
      CHECK(members(r.trace) == lfmis(g, ranks));
      for (auto a : r.trace.awake_rounds) CHECK(a <= r.trace.total_rounds);
    }
  }
}

TEST_CASE("ranks are below n^3") {
  CHECK(rank_bound(1) == 1);
  CHECK(rank_bound(256) == 256ULL * 256 * 256);
  const auto ranks = draw_ranks(100, 4);
  for (auto r : ranks) CHECK(r < 1000000ULL);
  CHECK(ranks == draw_ranks(100, 4));
}

TEST_CASE("luby") {
  const auto single = Graph::from_edges(1, {});
  const auto r = run_algorithm(single, {Algorithm::Luby, std::nullopt, 6}, 0);
  CHECK(r.trace.outputs[0] == MisStatus::True);
  CHECK(r.trace.total_rounds <= 3);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (const auto& g : {gen(GraphFamily::Gnp, 80, 0.08, seed), gen(GraphFamily::Star, 40, 0, seed),
                          gen(GraphFamily::Complete, 20, 0, seed), gen(GraphFamily::Cycle, 50, 0, seed)}) {
      const auto a = run_algorithm(g, {Algorithm::Luby, std::nullopt, 6}, seed);
      CHECK(check_mis(g, a.trace.outputs).valid());
      CHECK(a.trace == run_algorithm(g, {Algorithm::Luby, std::nullopt, 6}, seed).trace);
    }
  }
}

TEST_CASE("luby phases grow logarithmically") {
  // O(log n) phases w.h.p.; 4 log2 n phases is a loose envelope.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen(GraphFamily::Gnp, 1000, 0.01, seed);
    const auto a = run_algorithm(g, {Algorithm::Luby, std::nullopt, 6}, seed);
    CHECK(a.trace.total_rounds / 3 <= 4 * 10);
  }
}
