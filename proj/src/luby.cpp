#include "smis/luby.hpp"

#include <algorithm>

#include "smis/greedy.hpp"

namespace smis {

namespace {
constexpr Payload kJoined{1, 1};
constexpr Payload kOut{0, 1};
}  // namespace

LubyProgram::LubyProgram(std::size_t n, NodeId self, std::uint64_t seed)
    : self_(self),
      bound_(rank_bound(n)),
      value_bits_(static_cast<std::uint8_t>(3 * ceil_log2(n))),
      rng_(derive_rng(seed, self, StreamTag::Luby)) {}

Action LubyProgram::start() { return Action::sleep_until(1); }

// Round r belongs to phase (r-1)/3; offset 0 exchanges values, 1 joins, 2 announces losers.
void LubyProgram::send(Round now, Outbox& out) {
  switch ((now - 1) % 3) {
    case 0:
      value_ = rng_.uniform_below(bound_);
      out.broadcast({value_, value_bits_});
      break;
    case 1:
      if (will_join_) {
        status_ = MisStatus::True;
        out.broadcast(kJoined);
      }
      break;
    default:
      if (status_ == MisStatus::False) out.broadcast(kOut);
      break;
  }
}

Action LubyProgram::receive(Round now, std::span<const Message> inbox) {
  switch ((now - 1) % 3) {
    case 0: {
      // Decided nodes have terminated, so every sender is an undecided neighbor.
      const std::pair<std::uint64_t, NodeId> mine{value_, self_};
      will_join_ = std::all_of(inbox.begin(), inbox.end(), [&](const Message& m) {
        return std::pair<std::uint64_t, NodeId>{m.payload.bits, m.src} < mine;
      });
      return Action::stay_awake(now);
    }
    case 1:
      if (status_ == MisStatus::True) return Action::terminate(status_, now);
      if (!inbox.empty()) status_ = MisStatus::False;
      return Action::stay_awake(now);
    default:
      if (status_ == MisStatus::False) return Action::terminate(status_, now);
      return Action::stay_awake(now);
  }
}

std::unique_ptr<NodeProgram> luby_program(std::size_t n, NodeId node, std::uint64_t seed) {
  return std::make_unique<LubyProgram>(n, node, seed);
}

}  // namespace smis
