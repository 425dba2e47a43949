#include <doctest.h>

#include <memory>

#include "smis/algorithms.hpp"
#include "smis/errors.hpp"
#include "smis/graph.hpp"
#include "smis/oracle.hpp"
#include "smis/rank.hpp"
#include "smis/recursive_mis.hpp"

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

std::vector<Graph> small_instances(std::uint64_t seed) {
  return {gen(GraphFamily::Gnp, 24, 0.15, seed), gen(GraphFamily::Cycle, 17, 0, seed),
          gen(GraphFamily::Tree, 30, 0, seed),   gen(GraphFamily::Star, 12, 0, seed),
          gen(GraphFamily::Complete, 9, 0, seed), gen(GraphFamily::Gnp, 40, 0.5, seed),
          gen(GraphFamily::Gnp, 16, 0.0, seed)};
}

// Delegates to a recursive program and records every status it passes through.
class Monitor final : public NodeProgram {
 public:
  explicit Monitor(std::unique_ptr<RecursiveMisProgram> p) : inner_(std::move(p)) {}
  Action start() override { return observe(inner_->start()); }
  void send(Round now, Outbox& out) override { inner_->send(now, out); }
  Action receive(Round now, std::span<const Message> inbox) override { return observe(inner_->receive(now, inbox)); }
  int changes = 0;
  bool regressed = false;

 private:
  Action observe(Action a) {
    const auto s = inner_->status();
    if (s != last_) {
      if (last_ != MisStatus::Unknown) regressed = true;
      ++changes;
      last_ = s;
    }
    return a;
  }
  std::unique_ptr<RecursiveMisProgram> inner_;
  MisStatus last_ = MisStatus::Unknown;
};

AlgoParams sleeping() { return {Algorithm::Sleeping, std::nullopt, 6}; }

}  // namespace

TEST_CASE("single node") {
  const auto g = Graph::from_edges(1, {});
  const auto r = run_algorithm(g, sleeping(), 0);
  CHECK(r.depth == 0);
  CHECK(r.trace.outputs[0] == MisStatus::True);
  CHECK(r.trace.awake_rounds[0] == 0);
  CHECK(r.trace.total_rounds == 0);
}

TEST_CASE("two isolated nodes") {
  const auto g = Graph::from_edges(2, {});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run_algorithm(g, sleeping(), seed);
    CHECK(r.depth == 3);
    CHECK(r.trace.outputs == std::vector<MisStatus>{MisStatus::True, MisStatus::True});
    CHECK(r.trace.awake_rounds == std::vector<std::uint32_t>{3, 3});
    CHECK(r.trace.total_rounds == 21);
  }
}

TEST_CASE("single edge: the larger tape wins") {
  const auto g = Graph::from_edges(2, {{0, 1}});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = run_algorithm(g, sleeping(), seed);
    const auto a = r.tapes[0].prefix(3), b = r.tapes[1].prefix(3);
    if (a == b) {
      // Both reach the base case together and join.
      CHECK(r.base_multiplicity);
      CHECK(r.trace.outputs == std::vector<MisStatus>{MisStatus::True, MisStatus::True});
      continue;
    }
    const NodeId winner = a > b ? 0 : 1;
    CHECK(r.trace.outputs[winner] == MisStatus::True);
    CHECK(r.trace.outputs[1 - winner] == MisStatus::False);
    CHECK(equivalence_check(g, Algorithm::Sleeping, r).outcome == EquivalenceReport::Outcome::Match);
  }
}

TEST_CASE("node programs agree with the centralized recursion") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    for (const auto& g : small_instances(seed)) {
      const auto r = run_algorithm(g, sleeping(), seed);
      const auto ref = reference_recursive_mis(g, r.tapes, r.depth);
      CHECK(r.trace.outputs == ref.outputs);
      CHECK(r.trace.call_records == ref.records);

      const AlgoParams fast{Algorithm::Fast, std::nullopt, 6};
      const auto f = run_algorithm(g, fast, seed);
      const auto fref = reference_recursive_mis(g, f.tapes, f.depth, f.leaf_rounds, f.ranks);
      CHECK(f.trace.outputs == fref.outputs);
      CHECK(f.trace.call_records == fref.records);
    }
  }
}

TEST_CASE("short greedy windows leave pinned nodes, still matching the reference") {
  // c = 1 with K = 1 gives windows too short for dense graphs.
  std::size_t failures = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = gen(GraphFamily::Gnp, 32, 0.3, seed);
    const AlgoParams p{Algorithm::Fast, 1, 1};
    const auto r = run_algorithm(g, p, seed);
    const auto ref = reference_recursive_mis(g, r.tapes, r.depth, r.leaf_rounds, r.ranks);
    CHECK(r.trace.outputs == ref.outputs);
    CHECK(r.trace.call_records == ref.records);
    CHECK(r.trace.total_rounds == fast_schedule(1, 32, 1));
    failures += r.leaf_failures;
    std::size_t unknown = 0;
    for (auto s : r.trace.outputs) unknown += s == MisStatus::Unknown;
    CHECK(unknown == r.leaf_failures);
  }
  CHECK(failures > 0);
}

TEST_CASE("schedule exactness and awake bound") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (const auto& g : small_instances(seed)) {
      const auto r = run_algorithm(g, sleeping(), seed);
      const int K = sleeping_depth(g.n());
      CHECK(r.trace.total_rounds == t_schedule(K));
      for (auto a : r.trace.awake_rounds) CHECK(a <= 3u * static_cast<unsigned>(K + 1));
      CHECK(r.trace.complete());

      const auto f = run_algorithm(g, {Algorithm::Fast, std::nullopt, 6}, seed);
      CHECK(f.trace.total_rounds == fast_schedule(fast_depth(g.n()), g.n(), 6));
    }
  }
}

TEST_CASE("status changes at most once") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen(GraphFamily::Gnp, 30, 0.2, seed);
    const int K = sleeping_depth(g.n());
    std::vector<std::unique_ptr<Monitor>> owned;
    std::vector<NodeProgram*> ps;
    for (NodeId v = 0; v < g.n(); ++v) {
      owned.push_back(std::make_unique<Monitor>(
          sleeping_mis_program(g.n(), v, BitTape::draw(seed, v, K), K)));
      ps.push_back(owned.back().get());
    }
    simulate(g, ps);
    for (const auto& m : owned) {
      CHECK_FALSE(m->regressed);
      CHECK(m->changes <= 1);
    }
  }
}

TEST_CASE("depth override") {
  // K = 0 sends everyone straight to the all-join base case.
  const auto g = gen(GraphFamily::Path, 3, 0, 0);
  const auto r = run_algorithm(g, {Algorithm::Sleeping, 0, 6}, 1);
  CHECK(r.base_multiplicity);
  CHECK(r.trace.outputs == std::vector<MisStatus>(3, MisStatus::True));
  CHECK_FALSE(check_mis(g, r.trace.outputs).valid());

  const auto deep = run_algorithm(g, {Algorithm::Sleeping, 10, 6}, 1);
  CHECK(deep.trace.total_rounds == t_schedule(10));
  CHECK_THROWS_AS(run_algorithm(g, {Algorithm::Sleeping, 63, 6}, 1), ConfigError);
  CHECK_THROWS_AS(run_algorithm(g, {Algorithm::Fast, std::nullopt, 0}, 1), ConfigError);
}

TEST_CASE("call records") {
  const auto g = gen(GraphFamily::Cycle, 64, 0, 0);
  const auto r = run_algorithm(g, sleeping(), 3);
  REQUIRE_FALSE(r.trace.call_records.empty());
  const auto& root = r.trace.call_records.front();
  CHECK(root.path.empty());
  CHECK(root.k == r.depth);
  CHECK(root.size_U == 64);
  CHECK(root.size_L + root.size_R <= root.size_U);
  for (const auto& c : r.trace.call_records) {
    CHECK(c.size_U >= 1);
    CHECK(c.path.size() == static_cast<std::size_t>(r.depth - c.k));
  }
  CHECK(CallPath{}.child(false).child(true).to_string() == "LR");
}
