#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smis/types.hpp"

namespace smis {

/// Simple undirected graph on dense node IDs 0..n-1, stored as CSR with
/// ascending neighbor lists.
class Graph {
 public:
  Graph() = default;

  /// Builds a canonical graph. Throws ConfigError on self-loops, duplicate
  /// edges, or endpoints >= n.
  static Graph from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges);

  /// Takes adjacency lists verbatim, without any canonicalization. Only for
  /// constructing malformed inputs to validate().
  static Graph from_adjacency_unchecked(const std::vector<std::vector<NodeId>>& adjacency);

  std::size_t n() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t m() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Edges as (u, v) with u < v, in ascending order.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

struct GraphIssue {
  enum class Kind { None, OutOfRange, SelfLoop, Duplicate, Unsorted, Asymmetric };
  Kind kind = Kind::None;
  NodeId u = 0;
  NodeId v = 0;

  bool ok() const noexcept { return kind == Kind::None; }
  std::string describe() const;
};

/// First violated Graph invariant, or Kind::None.
GraphIssue validate(const Graph& g);

enum class GraphFamily { Gnp, Cycle, Path, Complete, Star, Tree, Grid, File };

std::string_view to_string(GraphFamily f);
GraphFamily parse_family(std::string_view name);

struct GraphSpec {
  GraphFamily family = GraphFamily::Cycle;
  std::size_t n = 0;  // node count; for grid, rows * cols
  double p = 0.0;     // gnp edge probability
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string path;   // file family
  std::uint64_t seed = 0;
};

/// Deterministic generator: identical specs give identical graphs.
Graph generate(const GraphSpec& spec);

/// Parses the edge-list text format ("u v" lines, '#' comments, optional
/// "# n=<int>" header).
Graph parse_edge_list(std::string_view text);
std::string serialize_edge_list(const Graph& g);
Graph load_edge_list(const std::string& path);

}  // namespace smis
