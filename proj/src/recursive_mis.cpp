#include "smis/recursive_mis.hpp"

#include <algorithm>
#include <map>

#include "smis/errors.hpp"

namespace smis {

namespace {

constexpr Payload kPresence{0, 0};

Payload status_payload(MisStatus s) { return {static_cast<std::uint64_t>(s), 2}; }

MisStatus payload_status(const Payload& p) { return static_cast<MisStatus>(p.bits & 3U); }

}  // namespace

std::string CallPath::to_string() const {
  std::string s(depth, 'L');
  for (std::uint8_t i = 0; i < depth; ++i) {
    if ((bits >> i) & 1U) s[i] = 'R';
  }
  return s;
}

RecursiveMisProgram::RecursiveMisProgram(NodeId self, BitTape tape, const RecursionConfig& config,
                                         std::uint64_t leaf_rank)
    : self_(self), tape_(tape), config_(config) {
  if (config.depth < 0 || config.depth > tape.length()) {
    throw ParameterError("recursion depth must be in [0, tape length]");
  }
  if (config.variant == RecursionVariant::Sleeping && config.leaf_rounds != 0) {
    throw ParameterError("the sleeping variant has zero-round leaves");
  }
  durations_.reserve(static_cast<std::size_t>(config.depth) + 1);
  for (int k = 0; k <= config.depth; ++k) durations_.push_back(recursion_schedule(k, config.leaf_rounds));
  if (config.variant == RecursionVariant::Fast) {
    leaf_ = GreedyCore(self, leaf_rank, static_cast<std::uint8_t>(3 * ceil_log2(config.n)));
  }
}

Action RecursiveMisProgram::start() { return enter_call(config_.depth, 1, CallPath{}); }

Action RecursiveMisProgram::enter_call(int k, Round start, CallPath path) {
  calls_.push_back({path, k});
  if (k == 0) {
    if (config_.variant == RecursionVariant::Sleeping) {
      if (status_ == MisStatus::Unknown) status_ = MisStatus::True;
      return child_done(start - 1);
    }
    if (config_.leaf_rounds == 0) {
      pinned_ = status_ == MisStatus::Unknown;
      return child_done(start - 1);
    }
    leaf_start_ = start;
    leaf_.begin(start);
    phase_ = Phase::Leaf;
    return Action::sleep_until(start);
  }
  stack_.push_back({k, start, path, false, calls_.size() - 1});
  phase_ = Phase::Detect;
  return Action::sleep_until(start);
}

// The current child of the top frame (a recursive call or the slept-through
// window standing in for it) has finished at round `end`.
Action RecursiveMisProgram::child_done(Round end) {
  while (!stack_.empty()) {
    const Frame& f = stack_.back();
    if (!f.right) {
      const Round sync = f.start + duration(f.k - 1) + 1;
      if (sync != end + 1) throw ProgramError("left recursion out of step with its parent");
      phase_ = Phase::Sync;
      return Action::sleep_until(sync);
    }
    const Round f_end = f.start + duration(f.k) - 1;
    if (f_end != end) throw ProgramError("right recursion out of step with its parent");
    stack_.pop_back();
  }
  return Action::terminate(status_, end);
}

void RecursiveMisProgram::send(Round now, Outbox& out) {
  switch (phase_) {
    case Phase::Detect:
      out.broadcast(kPresence);
      break;
    case Phase::Sync:
    case Phase::SecondDetect:
      out.broadcast(status_payload(status_));
      break;
    case Phase::Leaf:
      leaf_.send(now, status_, out);
      break;
  }
}

Action RecursiveMisProgram::receive(Round now, std::span<const Message> inbox) {
  if (phase_ == Phase::Leaf) {
    const Round leaf_end = leaf_start_ + config_.leaf_rounds - 1;
    bool done = leaf_.receive(now, inbox, status_);
    if (!done && now == leaf_end) {
      pinned_ = status_ == MisStatus::Unknown;
      done = true;
    }
    return done ? child_done(leaf_end) : Action::stay_awake(now);
  }

  Frame& f = stack_.back();
  LocalCall& log = calls_[f.log_index];
  switch (phase_) {
    case Phase::Detect:
      if (inbox.empty() && status_ == MisStatus::Unknown) {
        status_ = MisStatus::True;
        log.isolated_join = true;
      }
      f.right = false;
      if (undecided() && tape_.bit(f.k) == 1) {
        log.in_left = true;
        return enter_call(f.k - 1, now + 1, f.path.child(false));
      }
      phase_ = Phase::Sync;
      return Action::sleep_until(f.start + duration(f.k - 1) + 1);

    case Phase::Sync:
      if (undecided() && std::any_of(inbox.begin(), inbox.end(), [](const Message& m) {
            return payload_status(m.payload) == MisStatus::True;
          })) {
        status_ = MisStatus::False;
        log.eliminated = true;
      }
      phase_ = Phase::SecondDetect;
      return Action::stay_awake(now);

    case Phase::SecondDetect:
      if (undecided() && std::all_of(inbox.begin(), inbox.end(), [](const Message& m) {
            return payload_status(m.payload) == MisStatus::False;
          })) {
        status_ = MisStatus::True;
        log.second_join = true;
      }
      f.right = true;
      if (undecided()) {
        log.in_right = true;
        return enter_call(f.k - 1, now + 1, f.path.child(true));
      }
      return child_done(now + duration(f.k - 1));

    case Phase::Leaf:
      break;
  }
  throw ProgramError("unreachable phase");
}

std::unique_ptr<RecursiveMisProgram> sleeping_mis_program(std::size_t n, NodeId node, BitTape tape,
                                                          int depth) {
  RecursionConfig cfg{RecursionVariant::Sleeping, n, depth, 0};
  return std::make_unique<RecursiveMisProgram>(node, tape, cfg);
}

std::unique_ptr<RecursiveMisProgram> fast_sleeping_mis_program(std::size_t n, NodeId node,
                                                               BitTape tape, int depth, int c,
                                                               std::uint64_t leaf_rank) {
  if (c < 1) throw ParameterError("greedy truncation constant c must be >= 1");
  RecursionConfig cfg{RecursionVariant::Fast, n, depth, static_cast<Round>(c) * ceil_log2(n)};
  return std::make_unique<RecursiveMisProgram>(node, tape, cfg, leaf_rank);
}

std::vector<CallRecord> aggregate_calls(std::span<const RecursiveMisProgram* const> programs) {
  std::map<std::string, CallRecord> by_path;
  for (const auto* p : programs) {
    for (const LocalCall& c : p->calls()) {
      CallRecord& r = by_path[c.path.to_string()];
      r.k = c.k;
      ++r.size_U;
      r.size_L += c.in_left;
      r.size_R += c.in_right;
      r.isolated_joins += c.isolated_join;
      r.eliminations += c.eliminated;
      r.second_detection_joins += c.second_join;
    }
  }
  std::vector<CallRecord> out;
  out.reserve(by_path.size());
  for (auto& [path, rec] : by_path) {
    rec.path = path;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace smis
