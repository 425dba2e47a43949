#include <doctest.h>

#include <functional>
#include <map>
#include <memory>
#include <set>

#include "smis/algorithms.hpp"
#include "smis/engine.hpp"
#include "smis/errors.hpp"
#include "smis/graph.hpp"

using namespace smis;

namespace {

// Wakes at the listed rounds, optionally broadcasting, and logs its inboxes.
class Scripted final : public NodeProgram {
 public:
  Scripted(std::set<Round> rounds, std::set<Round> sends, Payload payload = {1, 1})
      : rounds_(std::move(rounds)), sends_(std::move(sends)), payload_(payload) {}

  Action start() override { return next(0); }
  void send(Round now, Outbox& out) override {
    if (sends_.contains(now)) out.broadcast(payload_);
  }
  Action receive(Round now, std::span<const Message> inbox) override {
    for (const auto& m : inbox) heard[now].push_back(m.src);
    heard[now];
    return next(now);
  }

  std::map<Round, std::vector<NodeId>> heard;

 private:
  Action next(Round now) {
    auto it = rounds_.upper_bound(now);
    if (it == rounds_.end()) return Action::terminate(MisStatus::False, now);
    return Action::sleep_until(*it);
  }
  std::set<Round> rounds_, sends_;
  Payload payload_;
};

// Runs a custom outbox each round it is awake.
class Custom final : public NodeProgram {
 public:
  explicit Custom(std::function<void(Outbox&)> fill, std::function<Action(Round)> after = nullptr)
      : fill_(std::move(fill)), after_(std::move(after)) {}
  Action start() override { return Action::sleep_until(1); }
  void send(Round, Outbox& out) override { fill_(out); }
  Action receive(Round now, std::span<const Message>) override {
    return after_ ? after_(now) : Action::terminate(MisStatus::True, now);
  }

 private:
  std::function<void(Outbox&)> fill_;
  std::function<Action(Round)> after_;
};

Trace run_all(const Graph& g, std::vector<NodeProgram*> ps, EngineConfig cfg = {}) {
  return simulate(g, ps, cfg);
}

Graph edge() { return Graph::from_edges(2, {{0, 1}}); }

}  // namespace

TEST_CASE("messages are delivered in the round they are sent") {
  Scripted a({5}, {5}), b({5}, {5});
  const auto t = run_all(edge(), {&a, &b});
  CHECK(a.heard[5] == std::vector<NodeId>{1});
  CHECK(b.heard[5] == std::vector<NodeId>{0});
  CHECK(t.messages_sent == 2);
  CHECK(t.messages_delivered == 2);
  CHECK(t.messages_dropped == 0);
  CHECK(t.awake_rounds == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("messages to sleeping nodes are dropped") {
  Scripted a({5}, {5}), b({9}, {});
  const auto t = run_all(edge(), {&a, &b});
  CHECK(b.heard.at(9).empty());
  CHECK(t.messages_sent == 1);
  CHECK(t.messages_delivered == 0);
  CHECK(t.messages_dropped == 1);
  CHECK(t.total_rounds == 9);
}

TEST_CASE("idle rounds are skipped but counted") {
  for (bool ff : {true, false}) {
    Scripted a({5, 9}, {5, 9}), b({5, 9}, {9});
    EngineConfig cfg;
    cfg.fast_forward = ff;
    const auto t = run_all(edge(), {&a, &b}, cfg);
    CHECK(t.total_rounds == 9);
    CHECK(t.awake_rounds == std::vector<std::uint32_t>{2, 2});
    CHECK(t.last_awake == std::vector<Round>{9, 9});
    CHECK(t.activations == 4);
    CHECK(a.heard[9] == std::vector<NodeId>{1});
    CHECK(a.heard[5].empty());
  }
}

TEST_CASE("terminate finish round extends total rounds") {
  Custom a([](Outbox&) {}, [](Round now) { return Action::terminate(MisStatus::True, now + 40); });
  Custom b([](Outbox&) {});
  const auto t = run_all(edge(), {&a, &b});
  CHECK(t.total_rounds == 41);
  CHECK(t.outputs == std::vector<MisStatus>{MisStatus::True, MisStatus::True});
  CHECK(t.complete());
}

TEST_CASE("CONGEST violations are hard errors") {
  const auto g = edge();  // budget B(2) = 3 + 8 = 11 bits
  CHECK(payload_budget(2) == 11);
  Custom idle([](Outbox&) {});

  Custom big([](Outbox& o) { o.broadcast({0, 12}); });
  CHECK_THROWS_AS(run_all(g, {&big, &idle}), CongestViolation);

  Custom ok([](Outbox& o) { o.broadcast({0, 11}); });
  CHECK(run_all(g, {&ok, &idle}).max_payload_bits == 11);

  Custom twice([](Outbox& o) {
    o.send(1, {0, 1});
    o.send(1, {1, 1});
  });
  CHECK_THROWS_AS(run_all(g, {&twice, &idle}), CongestViolation);

  Custom mixed([](Outbox& o) {
    o.broadcast({0, 1});
    o.send(1, {1, 1});
  });
  CHECK_THROWS_AS(run_all(g, {&mixed, &idle}), CongestViolation);

  const auto g3 = Graph::from_edges(3, {{0, 1}});
  Custom stranger([](Outbox& o) { o.send(2, {0, 1}); });
  Custom idle2([](Outbox&) {});
  CHECK_THROWS_AS(run_all(g3, {&stranger, &idle, &idle2}), CongestViolation);
}

TEST_CASE("sleeping into the present is a program error") {
  Custom a([](Outbox&) {}, [](Round now) { return Action::sleep_until(now); });
  Custom b([](Outbox&) {});
  CHECK_THROWS_AS(run_all(edge(), {&a, &b}), ProgramError);
}

TEST_CASE("round cap raises a timeout with the partial trace") {
  for (bool ff : {true, false}) {
    Custom a([](Outbox& o) { o.broadcast({0, 1}); }, [](Round now) { return Action::stay_awake(now); });
    Custom b([](Outbox&) {});
    EngineConfig cfg;
    cfg.round_cap = 100;
    cfg.fast_forward = ff;
    try {
      run_all(edge(), {&a, &b}, cfg);
      FAIL("expected timeout");
    } catch (const TimeoutError& e) {
      CHECK(e.partial().awake_rounds[0] == 100);
      CHECK(e.partial().terminated[1]);
      CHECK_FALSE(e.partial().terminated[0]);
      CHECK_FALSE(e.partial().complete());
    }
  }
}

TEST_CASE("one program per node") {
  Custom a([](Outbox&) {});
  CHECK_THROWS_AS(run_all(edge(), {&a}), ParameterError);
}

TEST_CASE("message conservation and stepping equivalence on real runs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GraphSpec s;
    s.family = GraphFamily::Gnp;
    s.n = 20;
    s.p = 0.2;
    s.seed = seed;
    const auto g = generate(s);
    for (auto algo : {Algorithm::Sleeping, Algorithm::Fast, Algorithm::Greedy, Algorithm::Luby}) {
      AlgoParams p{algo, std::nullopt, 6};
      EngineConfig stepping;
      stepping.fast_forward = false;
      const auto a = run_algorithm(g, p, seed);
      const auto b = run_algorithm(g, p, seed, stepping);
      CHECK(a.trace == b.trace);
      CHECK(a.trace.messages_sent == a.trace.messages_delivered + a.trace.messages_dropped);
      CHECK(a.trace.max_payload_bits <= payload_budget(g.n()));
    }
  }
}
