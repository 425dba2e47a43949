#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smis/graph.hpp"
#include "smis/types.hpp"

namespace smis {

/// Bit-string payload of at most 64 bits.
struct Payload {
  std::uint64_t bits = 0;
  std::uint8_t length = 0;
};

struct Message {
  NodeId src = 0;
  NodeId dst = 0;
  Payload payload;
};

/// CONGEST budget B(n) = 3*ceil(log2 n) + 8 bits: a tag plus a value in [0, n^3).
std::uint32_t ceil_log2(std::uint64_t x) noexcept;
std::uint32_t payload_budget(std::size_t n) noexcept;

/// Messages a node emits in one round: either one broadcast to every graph
/// neighbor, or unicasts to distinct neighbors.
class Outbox {
 public:
  void broadcast(Payload p) {
    has_broadcast_ = true;
    broadcast_ = p;
  }
  void send(NodeId dst, Payload p) { unicasts_.push_back({0, dst, p}); }

  bool empty() const noexcept { return !has_broadcast_ && unicasts_.empty(); }
  void clear() noexcept {
    has_broadcast_ = false;
    unicasts_.clear();
  }

 private:
  friend class Simulator;
  bool has_broadcast_ = false;
  Payload broadcast_;
  std::vector<Message> unicasts_;
};

/// What a node does after an activation.
class Action {
 public:
  enum class Kind { SleepUntil, Terminate };

  static Action sleep_until(Round r) { return Action(Kind::SleepUntil, r, MisStatus::Unknown); }
  static Action stay_awake(Round now) { return sleep_until(now + 1); }
  /// Output is final. The node takes no further part in the execution; its
  /// schedule is complete at `finish` (>= the current round), which counts
  /// toward total_rounds even though the node is asleep until then.
  static Action terminate(MisStatus output, Round finish) {
    return Action(Kind::Terminate, finish, output);
  }

  Kind kind() const noexcept { return kind_; }
  Round round() const noexcept { return round_; }
  MisStatus output() const noexcept { return output_; }

 private:
  Action(Kind k, Round r, MisStatus o) : kind_(k), round_(r), output_(o) {}
  Kind kind_;
  Round round_;
  MisStatus output_;
};

/// Per-node behaviour driven by the simulator. In every round a node is awake,
/// send() runs for all awake nodes first, then receive() delivers the messages
/// addressed to each awake node in that same round.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  /// Called once at round 0; returns SleepUntil(r >= 1) or Terminate.
  virtual Action start() = 0;
  virtual void send(Round now, Outbox& out) = 0;
  virtual Action receive(Round now, std::span<const Message> inbox) = 0;
};

/// Aggregate of one vertex of the recursion tree.
struct CallRecord {
  std::string path;  // "" for the root, then 'L'/'R' per level
  int k = 0;
  std::uint32_t size_U = 0;
  std::uint32_t size_L = 0;
  std::uint32_t size_R = 0;
  std::uint32_t isolated_joins = 0;
  std::uint32_t eliminations = 0;
  std::uint32_t second_detection_joins = 0;

  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

struct Trace {
  std::vector<std::uint32_t> awake_rounds;
  std::vector<Round> last_awake;
  std::vector<MisStatus> outputs;
  std::vector<bool> terminated;
  Round total_rounds = 0;
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_delivered = 0;
  std::uint64_t messages_dropped = 0;
  std::uint64_t activations = 0;
  std::uint32_t max_payload_bits = 0;
  std::vector<CallRecord> call_records;

  bool complete() const;
  friend bool operator==(const Trace&, const Trace&) = default;
};

struct EngineConfig {
  Round round_cap = Round{1} << 40;
  /// When false, the clock visits every round one at a time.
  bool fast_forward = true;
};

/// The run exceeded the round cap; carries the trace up to that point.
class TimeoutError : public std::runtime_error {
 public:
  TimeoutError(const std::string& what, Trace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trace& partial() const noexcept { return partial_; }

 private:
  Trace partial_;
};

/// Synchronous sleeping-model execution. Throws CongestViolation, ProgramError
/// or TimeoutError.
Trace simulate(const Graph& g, std::span<NodeProgram* const> programs,
               const EngineConfig& config = {});

}  // namespace smis
