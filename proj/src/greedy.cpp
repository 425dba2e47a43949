#include "smis/greedy.hpp"

#include <algorithm>

#include "smis/rng.hpp"

namespace smis {

namespace {
constexpr Payload kJoined{1, 1};
constexpr Payload kOut{0, 1};
}  // namespace

std::uint64_t rank_bound(std::size_t n) {
  const std::uint64_t m = n;
  return m * m * m;
}

std::vector<std::uint64_t> draw_ranks(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint64_t> ranks(n);
  const auto bound = rank_bound(n);
  for (NodeId v = 0; v < n; ++v) ranks[v] = derive_rng(seed, v, StreamTag::Rank).uniform_below(bound);
  return ranks;
}

void GreedyCore::begin(Round first) {
  first_ = first;
  undecided_.clear();
  will_join_ = false;
  pending_out_ = false;
}

bool GreedyCore::is_local_max() const {
  const std::pair<std::uint64_t, NodeId> mine{rank_, self_};
  return std::all_of(undecided_.begin(), undecided_.end(), [&](const auto& w) { return w < mine; });
}

void GreedyCore::send(Round now, MisStatus& status, Outbox& out) {
  const Round offset = now - first_;
  if (offset == 0) {
    out.broadcast({rank_, rank_bits_});
  } else if (offset % 2 == 1) {
    if (status == MisStatus::Unknown && will_join_) {
      status = MisStatus::True;
      out.broadcast(kJoined);
    }
  } else if (pending_out_) {
    out.broadcast(kOut);
  }
}

bool GreedyCore::receive(Round now, std::span<const Message> inbox, MisStatus& status) {
  const Round offset = now - first_;
  if (offset == 0) {
    undecided_.clear();
    for (const auto& m : inbox) undecided_.emplace_back(m.payload.bits, m.src);
    will_join_ = is_local_max();
    return false;
  }
  if (offset % 2 == 1) {
    if (status == MisStatus::True) return true;
    if (status == MisStatus::Unknown && !inbox.empty()) {
      status = MisStatus::False;
      pending_out_ = true;
    }
    return false;
  }
  if (pending_out_) {
    pending_out_ = false;
    return true;
  }
  // Inboxes arrive ordered by sender.
  std::erase_if(undecided_, [&](const auto& w) {
    return std::binary_search(inbox.begin(), inbox.end(), Message{w.second, 0, {}},
                              [](const Message& a, const Message& b) { return a.src < b.src; });
  });
  will_join_ = status == MisStatus::Unknown && is_local_max();
  return false;
}

GreedyProgram::GreedyProgram(std::size_t n, NodeId self, std::uint64_t rank)
    : core_(self, rank, static_cast<std::uint8_t>(3 * ceil_log2(n))) {}

Action GreedyProgram::start() {
  core_.begin(1);
  return Action::sleep_until(1);
}

void GreedyProgram::send(Round now, Outbox& out) { core_.send(now, status_, out); }

Action GreedyProgram::receive(Round now, std::span<const Message> inbox) {
  if (core_.receive(now, inbox, status_)) return Action::terminate(status_, now);
  return Action::stay_awake(now);
}

std::unique_ptr<NodeProgram> greedy_mis_program(std::size_t n, NodeId node, std::uint64_t rank) {
  return std::make_unique<GreedyProgram>(n, node, rank);
}

}  // namespace smis
