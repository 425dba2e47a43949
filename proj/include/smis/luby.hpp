#pragma once

#include <cstdint>
#include <memory>

#include "smis/engine.hpp"
#include "smis/rng.hpp"

namespace smis {

/// Luby's algorithm: phases of three rounds (value exchange, join, out), with
/// a fresh random value per phase and ID tiebreak.
class LubyProgram final : public NodeProgram {
 public:
  LubyProgram(std::size_t n, NodeId self, std::uint64_t seed);

  Action start() override;
  void send(Round now, Outbox& out) override;
  Action receive(Round now, std::span<const Message> inbox) override;

 private:
  NodeId self_;
  std::uint64_t bound_;
  std::uint8_t value_bits_;
  RngStream rng_;
  std::uint64_t value_ = 0;
  MisStatus status_ = MisStatus::Unknown;
  bool will_join_ = false;
};

std::unique_ptr<NodeProgram> luby_program(std::size_t n, NodeId node, std::uint64_t seed);

}  // namespace smis
