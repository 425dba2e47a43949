#include "smis/engine.hpp"

#include <algorithm>
#include <map>

#include "smis/errors.hpp"

namespace smis {

std::uint32_t ceil_log2(std::uint64_t x) noexcept {
  if (x <= 1) return 0;
  return 64 - static_cast<std::uint32_t>(__builtin_clzll(x - 1));
}

std::uint32_t payload_budget(std::size_t n) noexcept { return 3 * ceil_log2(n) + 8; }

bool Trace::complete() const {
  return std::all_of(terminated.begin(), terminated.end(), [](bool t) { return t; });
}

class Simulator {
 public:
  Simulator(const Graph& g, std::span<NodeProgram* const> programs, const EngineConfig& config)
      : g_(g), programs_(programs), config_(config), budget_(payload_budget(g.n())) {
    const auto n = g.n();
    if (programs.size() != n) throw ParameterError("one program per node required");
    trace_.awake_rounds.assign(n, 0);
    trace_.last_awake.assign(n, 0);
    trace_.outputs.assign(n, MisStatus::Unknown);
    trace_.terminated.assign(n, false);
    stamp_.assign(n, -1);
    outboxes_.resize(n);
    sent_count_.assign(n, 0);
    delivered_from_.assign(n, 0);
  }

  Trace run() {
    for (NodeId v = 0; v < g_.n(); ++v) apply(v, programs_[v]->start(), 0);

    Round clock = 0;
    while (!wake_.empty()) {
      auto it = wake_.begin();
      const Round t = it->first;
      if (!config_.fast_forward) {
        // Visit the idle rounds one by one; nothing happens in them.
        while (clock + 1 < t) {
          ++clock;
          check_cap(clock);
        }
      }
      check_cap(t);
      std::vector<NodeId> awake = std::move(it->second);
      wake_.erase(it);
      std::sort(awake.begin(), awake.end());
      step(t, awake);
      clock = t;
      trace_.total_rounds = std::max(trace_.total_rounds, t);
    }
    check_cap(trace_.total_rounds);
    return std::move(trace_);
  }

 private:
  void check_cap(Round t) {
    if (t > config_.round_cap) {
      throw TimeoutError("round cap " + std::to_string(config_.round_cap) + " exceeded", trace_);
    }
  }

  void apply(NodeId v, const Action& a, Round now) {
    if (a.kind() == Action::Kind::SleepUntil) {
      if (a.round() <= now) {
        throw ProgramError("node " + std::to_string(v) + " asked to sleep until round " +
                           std::to_string(a.round()) + " at round " + std::to_string(now));
      }
      wake_[a.round()].push_back(v);
    } else {
      if (a.round() < now) {
        throw ProgramError("node " + std::to_string(v) + " terminated with finish round in the past");
      }
      trace_.outputs[v] = a.output();
      trace_.terminated[v] = true;
      trace_.total_rounds = std::max(trace_.total_rounds, a.round());
    }
  }

  void check_payload(NodeId v, const Payload& p) {
    if (p.length > budget_) {
      throw CongestViolation("node " + std::to_string(v) + " sent " + std::to_string(p.length) +
                             " bits, budget is " + std::to_string(budget_));
    }
    trace_.max_payload_bits = std::max<std::uint32_t>(trace_.max_payload_bits, p.length);
  }

  void collect_sends(Round t, NodeId v) {
    Outbox& out = outboxes_[v];
    out.clear();
    programs_[v]->send(t, out);
    if (out.has_broadcast_) {
      if (!out.unicasts_.empty()) {
        throw CongestViolation("node " + std::to_string(v) +
                               " sent a broadcast and unicasts in the same round");
      }
      check_payload(v, out.broadcast_);
      sent_count_[v] = g_.degree(v);
      return;
    }
    auto& uni = out.unicasts_;
    for (auto& m : uni) {
      m.src = v;
      if (!g_.has_edge(v, m.dst)) {
        throw CongestViolation("node " + std::to_string(v) + " sent to non-neighbor " +
                               std::to_string(m.dst));
      }
      check_payload(v, m.payload);
    }
    std::sort(uni.begin(), uni.end(), [](const Message& a, const Message& b) { return a.dst < b.dst; });
    for (std::size_t i = 1; i < uni.size(); ++i) {
      if (uni[i].dst == uni[i - 1].dst) {
        throw CongestViolation("two messages on edge " + std::to_string(v) + "->" +
                               std::to_string(uni[i].dst) + " in round " + std::to_string(t));
      }
    }
    sent_count_[v] = uni.size();
  }

  // Appends u's message for v, if any, to the inbox.
  void pull(NodeId u, NodeId v) {
    const Outbox& out = outboxes_[u];
    if (out.has_broadcast_) {
      inbox_.push_back({u, v, out.broadcast_});
    } else if (!out.unicasts_.empty()) {
      auto it = std::lower_bound(out.unicasts_.begin(), out.unicasts_.end(), v,
                                 [](const Message& m, NodeId d) { return m.dst < d; });
      if (it == out.unicasts_.end() || it->dst != v) return;
      inbox_.push_back(*it);
    } else {
      return;
    }
    ++delivered_from_[u];
  }

  void step(Round t, const std::vector<NodeId>& awake) {
    for (NodeId v : awake) stamp_[v] = t;
    for (NodeId v : awake) {
      collect_sends(t, v);
      trace_.messages_sent += sent_count_[v];
    }

    for (NodeId v : awake) {
      inbox_.clear();
      const auto nb = g_.neighbors(v);
      // Scan whichever side is smaller: v's adjacency, or the awake set with
      // adjacency lookups. Both yield the inbox ordered by sender ID.
      if (nb.size() <= 8 * awake.size()) {
        for (NodeId u : nb) {
          if (stamp_[u] == t) pull(u, v);
        }
      } else {
        for (NodeId u : awake) {
          if (u != v && std::binary_search(nb.begin(), nb.end(), u)) pull(u, v);
        }
      }
      trace_.messages_delivered += inbox_.size();
      const Action a = programs_[v]->receive(t, inbox_);
      ++trace_.awake_rounds[v];
      trace_.last_awake[v] = t;
      ++trace_.activations;
      apply(v, a, t);
    }

    for (NodeId v : awake) {
      trace_.messages_dropped += sent_count_[v] - delivered_from_[v];
      delivered_from_[v] = 0;
      sent_count_[v] = 0;
    }
  }

  const Graph& g_;
  std::span<NodeProgram* const> programs_;
  EngineConfig config_;
  std::uint32_t budget_;
  Trace trace_;
  std::map<Round, std::vector<NodeId>> wake_;
  std::vector<Round> stamp_;
  std::vector<Outbox> outboxes_;
  std::vector<std::uint64_t> sent_count_;
  std::vector<std::uint64_t> delivered_from_;
  std::vector<Message> inbox_;
};

Trace simulate(const Graph& g, std::span<NodeProgram* const> programs, const EngineConfig& config) {
  return Simulator(g, programs, config).run();
}

}  // namespace smis
