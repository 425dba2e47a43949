#include "smis/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "smis/errors.hpp"
#include "smis/rng.hpp"

namespace smis {

Graph Graph::from_edges(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw ConfigError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") has an endpoint >= n=" + std::to_string(n));
    }
    if (u == v) throw ConfigError("self-loop at node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw ConfigError("duplicate edge (" + std::to_string(dup->first) + "," +
                      std::to_string(dup->second) + ")");
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(2 * edges.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v): the first pass appends each node's smaller
  // neighbors in ascending order, the second its larger ones.
  for (const auto& [u, v] : edges) g.neighbors_[fill[v]++] = u;
  for (const auto& [u, v] : edges) g.neighbors_[fill[u]++] = v;
  return g;
}

Graph Graph::from_adjacency_unchecked(const std::vector<std::vector<NodeId>>& adjacency) {
  Graph g;
  g.offsets_.assign(adjacency.size() + 1, 0);
  for (std::size_t v = 0; v < adjacency.size(); ++v) {
    g.offsets_[v + 1] = g.offsets_[v] + adjacency[v].size();
    g.neighbors_.insert(g.neighbors_.end(), adjacency[v].begin(), adjacency[v].end());
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(m());
  for (NodeId u = 0; u < n(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::string GraphIssue::describe() const {
  const std::string pair = "(" + std::to_string(u) + "," + std::to_string(v) + ")";
  switch (kind) {
    case Kind::None: return "valid";
    case Kind::OutOfRange: return "neighbor out of range " + pair;
    case Kind::SelfLoop: return "self-loop at node " + std::to_string(u);
    case Kind::Duplicate: return "duplicate edge " + pair;
    case Kind::Unsorted: return "adjacency of node " + std::to_string(u) + " not sorted at " + pair;
    case Kind::Asymmetric: return "asymmetric adjacency " + pair;
  }
  return "unknown";
}

GraphIssue validate(const Graph& g) {
  using Kind = GraphIssue::Kind;
  const auto n = g.n();
  for (NodeId u = 0; u < n; ++u) {
    const auto nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const NodeId v = nb[i];
      if (v >= n) return {Kind::OutOfRange, u, v};
      if (v == u) return {Kind::SelfLoop, u, v};
      if (i > 0 && nb[i - 1] == v) return {Kind::Duplicate, u, v};
      if (i > 0 && nb[i - 1] > v) return {Kind::Unsorted, u, v};
    }
  }
  // Lists are sorted from here on, so has_edge's binary search is valid.
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (!g.has_edge(v, u)) return {Kind::Asymmetric, u, v};
    }
  }
  return {};
}

std::string_view to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::Gnp: return "gnp";
    case GraphFamily::Cycle: return "cycle";
    case GraphFamily::Path: return "path";
    case GraphFamily::Complete: return "complete";
    case GraphFamily::Star: return "star";
    case GraphFamily::Tree: return "tree";
    case GraphFamily::Grid: return "grid";
    case GraphFamily::File: return "file";
  }
  return "?";
}

GraphFamily parse_family(std::string_view name) {
  for (auto f : {GraphFamily::Gnp, GraphFamily::Cycle, GraphFamily::Path, GraphFamily::Complete,
                 GraphFamily::Star, GraphFamily::Tree, GraphFamily::Grid, GraphFamily::File}) {
    if (to_string(f) == name) return f;
  }
  throw ConfigError("unknown graph family '" + std::string(name) + "'");
}

namespace {

using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

// Uniform labeled tree from a uniform Pruefer sequence.
EdgeList pruefer_tree(std::size_t n, std::uint64_t seed) {
  EdgeList edges;
  if (n < 2) return edges;
  if (n == 2) return {{0, 1}};
  auto rng = derive_rng(seed, 0, StreamTag::Graph);
  std::vector<NodeId> code(n - 2);
  for (auto& c : code) c = static_cast<NodeId>(rng.uniform_below(n));

  std::vector<std::size_t> degree(n, 1);
  for (NodeId c : code) ++degree[c];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> leaves;
  for (NodeId v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  for (NodeId c : code) {
    const NodeId leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.push(c);
  }
  const NodeId a = leaves.top();
  leaves.pop();
  edges.emplace_back(a, leaves.top());
  return edges;
}

}  // namespace

Graph generate(const GraphSpec& spec) {
  const std::size_t n = spec.n;
  if (spec.family == GraphFamily::File) return load_edge_list(spec.path);
  if (spec.family == GraphFamily::Grid) {
    if (spec.rows == 0 || spec.cols == 0) throw ConfigError("grid requires rows >= 1 and cols >= 1");
  } else if (n < 1) {
    throw ConfigError(std::string(to_string(spec.family)) + " requires n >= 1");
  }
  if (n > (std::size_t{1} << 31)) throw ConfigError("n too large");

  EdgeList edges;
  switch (spec.family) {
    case GraphFamily::Gnp: {
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw ConfigError("gnp requires 0 <= p <= 1");
      // One draw per unordered pair, indexed by the pair itself.
      const auto stream = derive_rng(spec.seed, 0, StreamTag::Graph);
      for (NodeId u = 0; u < n; ++u) {
        const std::uint64_t row = static_cast<std::uint64_t>(u) * n;
        for (NodeId v = u + 1; v < n; ++v) {
          if (bernoulli(stream.at(row + v), spec.p)) edges.emplace_back(u, v);
        }
      }
      break;
    }
    case GraphFamily::Cycle:
      if (n < 3) throw ConfigError("cycle requires n >= 3");
      for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, static_cast<NodeId>((v + 1) % n));
      break;
    case GraphFamily::Path:
      for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      break;
    case GraphFamily::Complete:
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      }
      break;
    case GraphFamily::Star:
      for (NodeId v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
    case GraphFamily::Tree:
      edges = pruefer_tree(n, spec.seed);
      break;
    case GraphFamily::Grid: {
      const auto rows = spec.rows, cols = spec.cols;
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          const auto v = static_cast<NodeId>(r * cols + c);
          if (c + 1 < cols) edges.emplace_back(v, v + 1);
          if (r + 1 < rows) edges.emplace_back(v, static_cast<NodeId>(v + cols));
        }
      }
      return Graph::from_edges(rows * cols, std::move(edges));
    }
    case GraphFamily::File:
      break;
  }
  return Graph::from_edges(n, std::move(edges));
}

namespace {

bool parse_uint(std::string_view tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::optional<std::uint64_t> declared_n;
  EdgeList edges;
  std::unordered_set<std::uint64_t> seen;
  std::uint64_t max_id = 0;
  bool any_edge = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks.front().front() == '#') {
      // Header must precede all edges.
      std::string_view body = line.substr(line.find('#') + 1);
      const auto body_toks = split_ws(body);
      if (body_toks.size() == 1 && body_toks[0].starts_with("n=")) {
        std::uint64_t value = 0;
        if (!parse_uint(body_toks[0].substr(2), value)) throw ParseError(line_no, "malformed header");
        if (any_edge || declared_n) throw ParseError(line_no, "header must come first and only once");
        declared_n = value;
      }
      continue;
    }
    std::uint64_t u = 0, v = 0;
    if (toks.size() != 2 || !parse_uint(toks[0], u) || !parse_uint(toks[1], v)) {
      throw ParseError(line_no, "malformed edge line '" + std::string(line) + "'");
    }
    if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
    if (declared_n && (u >= *declared_n || v >= *declared_n)) {
      throw ParseError(line_no, "node ID >= declared n=" + std::to_string(*declared_n));
    }
    if (u > 0xFFFFFFFEULL || v > 0xFFFFFFFEULL) throw ParseError(line_no, "node ID too large");
    const std::uint64_t lo = std::min(u, v), hi = std::max(u, v);
    if (!seen.insert((lo << 32) | hi).second) {
      throw ParseError(line_no, "duplicate edge " + std::to_string(lo) + " " + std::to_string(hi));
    }
    edges.emplace_back(static_cast<NodeId>(lo), static_cast<NodeId>(hi));
    max_id = std::max(max_id, hi);
    any_edge = true;
  }
  const std::size_t n = declared_n ? *declared_n : (any_edge ? max_id + 1 : 0);
  return Graph::from_edges(n, std::move(edges));
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# n=" << g.n() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open edge-list file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

}  // namespace smis
