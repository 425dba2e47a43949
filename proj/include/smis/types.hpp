#pragma once

#include <cstdint>
#include <string_view>

namespace smis {

using NodeId = std::uint32_t;
// Absolute round index. Round 0 is the pre-execution instant; communication
// rounds are numbered from 1.
using Round = std::int64_t;

enum class MisStatus : std::uint8_t { Unknown = 0, True = 1, False = 2 };

constexpr std::string_view to_string(MisStatus s) {
  switch (s) {
    case MisStatus::True: return "true";
    case MisStatus::False: return "false";
    default: return "unknown";
  }
}

}  // namespace smis
