#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "smis/algorithms.hpp"
#include "smis/engine.hpp"
#include "smis/graph.hpp"
#include "smis/metrics.hpp"

namespace smis {

inline constexpr std::string_view kToolName = "mis_sim";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// A concrete graph instance description. When `seed` is empty the graph is
/// seeded with the run seed.
struct GraphRequest {
  GraphSpec spec;
  bool seed_from_run = true;
  std::string label;  // canonical text, e.g. "gnp:n=256,p=0.05"

  Graph build(std::uint64_t run_seed) const;
  bool depends_on_seed() const;
};

/// Parses `family:key=val,...` or `file:path`. Keys: n, p, rows, cols, seed.
/// `n` accepts a doubling sweep `a..b` (e.g. `2^4..2^12` or `16..4096`) or a
/// list `a|b|c`; `p` accepts `x/n` to scale with n. Returns one request per n.
std::vector<GraphRequest> expand_graph_requests(std::string_view text);

/// Like expand_graph_requests but requires exactly one instance.
GraphRequest parse_graph_request(std::string_view text);

struct SeedRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;  // inclusive
  std::uint64_t count() const noexcept { return last - first + 1; }
};

/// "a..b" (inclusive) or "a". Throws ConfigError on an empty range.
SeedRange parse_seed_range(std::string_view text);

struct ExperimentConfig {
  std::vector<Algorithm> algorithms;
  std::vector<std::string> graphs;  // templates
  SeedRange seeds;
  int c = 6;
  std::optional<int> depth;
  Round round_cap = Round{1} << 40;
  std::string output;
  bool record_timing = false;

  /// Throws ConfigError unless at least one algorithm, graph and seed.
  void validate() const;
  /// Flat key=value lines in a fixed key order.
  std::string canonical() const;
};

/// Flat `key = value` lines; '#' comments. Keys: algorithms, graphs (';'
/// separated), seeds, c, K, cap, output, timing.
ExperimentConfig parse_experiment_config(std::string_view text);

struct ResultRow {
  std::string algo;
  std::string family;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  ComplexityMetrics metrics;
  std::string verdict;  // Verdict::name() or "timeout"
  bool rank_tie = false;
  std::int64_t runtime_ms = 0;
  std::string graph_label;
  std::uint64_t messages_sent = 0;
  std::uint32_t max_payload_bits = 0;
};

inline constexpr std::string_view kCsvHeader =
    "algo,family,n,m,seed,avg_awake,max_awake,total_rounds,avg_finish,mis_size,verdict,rank_tie_flag,runtime_ms";

struct CellOutcome {
  ResultRow row;
  RunResult run;
  bool timed_out = false;
};

/// One simulation turned into a result row. A round-cap hit becomes verdict
/// "timeout" instead of an exception.
CellOutcome run_cell(const Graph& g, const GraphRequest& request, const AlgoParams& params,
                     std::uint64_t seed, const EngineConfig& engine, bool record_timing = false);

/// Worker count from MIS_SIM_WORKERS, else hardware concurrency.
unsigned worker_count();

/// Runs every (algorithm, graph, seed) cell; rows are in canonical order
/// (algo, family, n, seed, graph label) regardless of worker count.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned workers);

std::string format_csv_row(const ResultRow& row);
std::string format_csv(const std::vector<ResultRow>& rows);

std::uint64_t fnv1a64(std::string_view data);
nlohmann::json experiment_manifest(const ExperimentConfig& config, std::size_t rows);

nlohmann::json metrics_json(const ResultRow& row);
nlohmann::json trace_json(const Trace& trace);
/// Outputs stored in a trace document.
std::vector<MisStatus> trace_outputs(const nlohmann::json& doc);

struct VerifyOptions {
  AlgoParams params;
  std::string graph;
  SeedRange seeds;
  std::set<std::string> checks;  // mis, equiv, pruning, zdecay, exact
};

struct VerifyOutcome {
  nlohmann::json report;
  std::vector<std::string> summary;
  bool passed = true;
};

/// Throws ConfigError / ParameterError on invalid requests.
VerifyOutcome run_verify(const VerifyOptions& options);

}  // namespace smis
