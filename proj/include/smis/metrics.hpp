#pragma once

#include <cstdint>

#include "smis/engine.hpp"
#include "smis/graph.hpp"
#include "smis/oracle.hpp"
#include "smis/rational.hpp"

namespace smis {

struct ComplexityMetrics {
  Rational avg_awake;         // (1/n) sum of awake rounds
  std::uint32_t max_awake = 0;
  Round total_rounds = 0;
  Rational avg_finish;        // (1/n) sum of last awake rounds
  std::size_t mis_size = 0;
  Verdict verdict;
};

/// Throws ParameterError for a trace with non-terminated nodes unless
/// `allow_incomplete` (timed-out runs are reported, not rejected).
ComplexityMetrics compute_metrics(const Graph& g, const Trace& trace, bool allow_incomplete = false);

}  // namespace smis
