#include "smis/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <iterator>
#include <numeric>
#include <tuple>

#include "smis/errors.hpp"

namespace smis {

std::string Verdict::name() const {
  switch (kind) {
    case Kind::Valid: return "valid";
    case Kind::NotIndependent: return "not_independent";
    case Kind::NotMaximal: return "not_maximal";
    case Kind::Undecided: return "undecided";
  }
  return "?";
}

std::string Verdict::describe() const {
  switch (kind) {
    case Kind::Valid: return "valid";
    case Kind::NotIndependent:
      return "not independent: edge " + std::to_string(u) + "-" + std::to_string(v);
    case Kind::NotMaximal: return "not maximal: node " + std::to_string(u) + " undominated";
    case Kind::Undecided: return "undecided: node " + std::to_string(u);
  }
  return "?";
}

Verdict check_mis(const Graph& g, std::span<const MisStatus> outputs) {
  if (outputs.size() != g.n()) throw ParameterError("one output per node required");
  using K = Verdict::Kind;
  for (const auto& [u, v] : g.edges()) {
    if (outputs[u] == MisStatus::True && outputs[v] == MisStatus::True) return {K::NotIndependent, u, v};
  }
  for (NodeId v = 0; v < g.n(); ++v) {
    if (outputs[v] == MisStatus::True) continue;
    const auto nb = g.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](NodeId w) { return outputs[w] == MisStatus::True; })) {
      return {K::NotMaximal, v, 0};
    }
  }
  for (NodeId v = 0; v < g.n(); ++v) {
    if (outputs[v] == MisStatus::Unknown) return {K::Undecided, v, 0};
  }
  return {};
}

std::vector<NodeId> sequential_greedy(const Graph& g, std::span<const NodeId> order) {
  const auto n = g.n();
  if (order.size() != n) throw ParameterError("order must list every node exactly once");
  std::vector<char> seen(n, 0);
  for (NodeId v : order) {
    if (v >= n || seen[v]) throw ParameterError("order is not a permutation");
    seen[v] = 1;
  }
  std::vector<char> joined(n, 0), blocked(n, 0);
  for (NodeId v : order) {
    if (blocked[v]) continue;
    joined[v] = 1;
    for (NodeId w : g.neighbors(v)) blocked[w] = 1;
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < n; ++v) {
    if (joined[v]) out.push_back(v);
  }
  return out;
}

RankOrder rank_order(std::span<const BitTape> tapes, int depth) {
  const auto n = tapes.size();
  std::vector<std::pair<std::uint64_t, NodeId>> keyed(n);
  for (NodeId v = 0; v < n; ++v) keyed[v] = {tapes[v].prefix(depth), v};
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  RankOrder result;
  result.order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.order.push_back(keyed[i].second);
    for (std::size_t j = i + 1; j < n && keyed[j].first == keyed[i].first; ++j) {
      result.ties.emplace_back(keyed[i].second, keyed[j].second);
    }
  }
  return result;
}

std::vector<NodeId> composite_order(std::span<const BitTape> tapes, int depth,
                                    std::span<const std::uint64_t> leaf_ranks) {
  const auto n = tapes.size();
  if (leaf_ranks.size() != n) throw ParameterError("one leaf rank per node required");
  std::vector<std::tuple<std::uint64_t, std::uint64_t, NodeId>> keyed(n);
  for (NodeId v = 0; v < n; ++v) keyed[v] = {tapes[v].prefix(depth), leaf_ranks[v], v};
  std::sort(keyed.begin(), keyed.end(), std::greater<>());
  std::vector<NodeId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = std::get<2>(keyed[i]);
  return order;
}

std::vector<NodeId> greedy_order(std::span<const std::uint64_t> ranks) {
  std::vector<NodeId> order(ranks.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return ranks[a] != ranks[b] ? ranks[a] > ranks[b] : a > b;
  });
  return order;
}

std::vector<NodeId> mis_members(std::span<const MisStatus> outputs) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < outputs.size(); ++v) {
    if (outputs[v] == MisStatus::True) out.push_back(v);
  }
  return out;
}

std::string EquivalenceReport::describe() const {
  switch (outcome) {
    case Outcome::Match: return "match";
    case Outcome::SkippedTie: return "skipped (rank tie)";
    case Outcome::SkippedInvalid: return "skipped (invalid run)";
    case Outcome::Mismatch: break;
  }
  auto fmt = [](const std::vector<NodeId>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
  };
  return "mismatch at node " + std::to_string(first_difference) + ": algorithm " +
         fmt(algorithm_set) + " vs oracle " + fmt(oracle_set);
}

EquivalenceReport equivalence_check(const Graph& g, Algorithm algorithm, const RunResult& run) {
  using O = EquivalenceReport::Outcome;
  EquivalenceReport report;
  std::vector<NodeId> order;
  switch (algorithm) {
    case Algorithm::Sleeping: {
      auto ranked = rank_order(run.tapes, run.depth);
      if (!ranked.ok()) {
        report.outcome = O::SkippedTie;
        return report;
      }
      order = std::move(ranked.order);
      break;
    }
    case Algorithm::Fast:
      if (!check_mis(g, run.trace.outputs).valid()) {
        report.outcome = O::SkippedInvalid;
        return report;
      }
      order = composite_order(run.tapes, run.depth, run.ranks);
      break;
    case Algorithm::Greedy:
      order = greedy_order(run.ranks);
      break;
    case Algorithm::Luby:
      throw ParameterError("Luby has no fixed order to compare against");
  }
  report.algorithm_set = mis_members(run.trace.outputs);
  report.oracle_set = sequential_greedy(g, order);
  if (report.algorithm_set != report.oracle_set) {
    report.outcome = O::Mismatch;
    std::vector<NodeId> diff;
    std::set_symmetric_difference(report.algorithm_set.begin(), report.algorithm_set.end(),
                                  report.oracle_set.begin(), report.oracle_set.end(),
                                  std::back_inserter(diff));
    report.first_difference = diff.front();
  }
  return report;
}

EquivalenceReport equivalence_check(const Graph& g, const AlgoParams& params, std::uint64_t seed) {
  return equivalence_check(g, params.algorithm, run_algorithm(g, params, seed));
}

namespace {

class ReferenceRecursion {
 public:
  ReferenceRecursion(const Graph& g, std::span<const BitTape> tapes, std::int64_t leaf_rounds,
                     std::span<const std::uint64_t> leaf_ranks)
      : g_(g), tapes_(tapes), leaf_rounds_(leaf_rounds), ranks_(leaf_ranks),
        status_(g.n(), MisStatus::Unknown), pinned_(g.n(), 0), mark_(g.n(), 0) {}

  void call(const std::vector<NodeId>& U, int k, const std::string& path) {
    CallRecord& rec = records_[path];
    rec.path = path;
    rec.k = k;
    rec.size_U = static_cast<std::uint32_t>(U.size());

    const auto adj = induced(U);
    if (k == 0) {
      if (leaf_rounds_ == 0) {
        for (NodeId v : U) status_[v] = MisStatus::True;
      } else {
        greedy_leaf(U, adj);
      }
      return;
    }

    for (std::size_t i = 0; i < U.size(); ++i) {
      if (adj[i].empty()) {
        status_[U[i]] = MisStatus::True;
        ++records_[path].isolated_joins;
      }
    }
    std::vector<NodeId> left;
    for (NodeId v : U) {
      if (undecided(v) && tapes_[v].bit(k) == 1) left.push_back(v);
    }
    records_[path].size_L = static_cast<std::uint32_t>(left.size());
    if (!left.empty()) call(left, k - 1, path + 'L');

    // Elimination: only False is assigned, so reading live statuses is safe.
    for (std::size_t i = 0; i < U.size(); ++i) {
      const NodeId v = U[i];
      if (undecided(v) && std::any_of(adj[i].begin(), adj[i].end(),
                                      [&](NodeId w) { return status_[w] == MisStatus::True; })) {
        status_[v] = MisStatus::False;
        ++records_[path].eliminations;
      }
    }
    // Second detection decides on the statuses sent at the start of the round.
    const std::vector<MisStatus> snapshot = status_;
    for (std::size_t i = 0; i < U.size(); ++i) {
      const NodeId v = U[i];
      if (undecided(v) && std::all_of(adj[i].begin(), adj[i].end(),
                                      [&](NodeId w) { return snapshot[w] == MisStatus::False; })) {
        status_[v] = MisStatus::True;
        ++records_[path].second_detection_joins;
      }
    }
    std::vector<NodeId> right;
    for (NodeId v : U) {
      if (undecided(v)) right.push_back(v);
    }
    records_[path].size_R = static_cast<std::uint32_t>(right.size());
    if (!right.empty()) call(right, k - 1, path + 'R');
  }

  ReferenceRun finish() {
    ReferenceRun out;
    out.outputs = status_;
    for (auto& [path, rec] : records_) out.records.push_back(rec);
    return out;
  }

 private:
  bool undecided(NodeId v) const { return status_[v] == MisStatus::Unknown && !pinned_[v]; }

  // Neighbor lists of G[U], indexed like U.
  std::vector<std::vector<NodeId>> induced(const std::vector<NodeId>& U) {
    ++epoch_;
    for (NodeId v : U) mark_[v] = epoch_;
    std::vector<std::vector<NodeId>> adj(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) {
      for (NodeId w : g_.neighbors(U[i])) {
        if (mark_[w] == epoch_) adj[i].push_back(w);
      }
    }
    return adj;
  }

  void greedy_leaf(const std::vector<NodeId>& U, const std::vector<std::vector<NodeId>>& adj) {
    auto key = [&](NodeId v) { return std::pair<std::uint64_t, NodeId>{ranks_[v], v}; };
    const std::int64_t iterations = leaf_rounds_ / 2;
    for (std::int64_t it = 0; it < iterations; ++it) {
      std::vector<std::size_t> joiners;
      for (std::size_t i = 0; i < U.size(); ++i) {
        if (status_[U[i]] != MisStatus::Unknown) continue;
        const bool top = std::all_of(adj[i].begin(), adj[i].end(), [&](NodeId w) {
          return status_[w] != MisStatus::Unknown || key(w) < key(U[i]);
        });
        if (top) joiners.push_back(i);
      }
      if (joiners.empty()) break;
      for (std::size_t i : joiners) status_[U[i]] = MisStatus::True;
      for (std::size_t i : joiners) {
        for (NodeId w : adj[i]) {
          if (status_[w] == MisStatus::Unknown) status_[w] = MisStatus::False;
        }
      }
    }
    for (NodeId v : U) {
      if (status_[v] == MisStatus::Unknown) pinned_[v] = 1;
    }
  }

  const Graph& g_;
  std::span<const BitTape> tapes_;
  std::int64_t leaf_rounds_;
  std::span<const std::uint64_t> ranks_;
  std::vector<MisStatus> status_;
  std::vector<char> pinned_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::map<std::string, CallRecord> records_;
};

}  // namespace

ReferenceRun reference_recursive_mis(const Graph& g, std::span<const BitTape> tapes, int depth,
                                     std::int64_t leaf_rounds, std::span<const std::uint64_t> leaf_ranks) {
  if (tapes.size() != g.n()) throw ParameterError("one tape per node required");
  if (leaf_rounds > 0 && leaf_ranks.size() != g.n()) throw ParameterError("one leaf rank per node required");
  ReferenceRecursion rec(g, tapes, leaf_rounds, leaf_ranks);
  std::vector<NodeId> all(g.n());
  std::iota(all.begin(), all.end(), NodeId{0});
  if (!all.empty()) rec.call(all, depth, "");
  return rec.finish();
}

SampleStat sample_stat(std::span<const double> xs) {
  SampleStat s;
  s.count = xs.size();
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  s.se = std::sqrt(var / static_cast<double>(xs.size()));
  return s;
}

bool PruningReport::violation() const {
  return root_left_violation || root_right_violation ||
         std::any_of(z.begin(), z.end(), [](const LevelZ& l) { return l.violation; });
}

PruningReport pruning_stats(std::span<const std::vector<CallRecord>> per_seed, std::size_t n, int depth) {
  if (per_seed.size() < 2) throw ParameterError("pruning statistics need at least two seeds");
  PruningReport report;
  report.seeds = per_seed.size();
  report.n = n;
  report.depth = depth;

  const auto levels = static_cast<std::size_t>(depth) + 1;
  std::vector<double> root_l, root_r;
  std::vector<std::vector<double>> z(levels), lratio(levels), rratio(levels);
  for (const auto& records : per_seed) {
    if (records.empty()) throw ParameterError("empty record set");
    std::vector<double> zu(levels, 0.0), zl(levels, 0.0), zr(levels, 0.0);
    for (const CallRecord& r : records) {
      if (r.k < 0 || r.k > depth) throw ParameterError("record level outside [0, K]");
      const auto i = static_cast<std::size_t>(depth - r.k);
      zu[i] += r.size_U;
      zl[i] += r.size_L;
      zr[i] += r.size_R;
      if (r.path.empty()) {
        root_l.push_back(r.size_L);
        root_r.push_back(r.size_R);
      }
    }
    for (std::size_t i = 0; i < levels; ++i) {
      z[i].push_back(zu[i]);
      if (zu[i] > 0) {
        lratio[i].push_back(zl[i] / zu[i]);
        rratio[i].push_back(zr[i] / zu[i]);
      }
    }
  }
  const auto dn = static_cast<double>(n);
  report.root_left = sample_stat(root_l);
  report.root_right = sample_stat(root_r);
  report.root_left_violation = report.root_left.mean > dn / 2 + 3 * report.root_left.se;
  report.root_right_violation = report.root_right.mean > dn / 4 + 3 * report.root_right.se;
  for (std::size_t i = 0; i < levels; ++i) {
    LevelZ lz;
    lz.i = static_cast<int>(i);
    lz.z = sample_stat(z[i]);
    lz.bound = std::pow(0.75, static_cast<double>(i)) * dn;
    lz.violation = lz.z.mean > lz.bound + 3 * lz.z.se;
    report.z.push_back(lz);
    if (depth - static_cast<int>(i) >= 1) {
      report.levels.push_back({depth - static_cast<int>(i), sample_stat(lratio[i]), sample_stat(rratio[i])});
    }
  }
  return report;
}

ExactExpectation exact_expectation(const Graph& g, int depth) {
  const auto n = g.n();
  if (n * static_cast<std::size_t>(depth) > 24) {
    throw ParameterError("exact enumeration needs n*K <= 24 (got " +
                         std::to_string(n * static_cast<std::size_t>(depth)) +
                         "); use pruning statistics instead");
  }
  if (depth < 1 || n < 1) throw ParameterError("exact enumeration needs K >= 1 and n >= 1");
  const auto bits = static_cast<unsigned>(n * static_cast<std::size_t>(depth));
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint64_t mask = (std::uint64_t{1} << depth) - 1;
  std::int64_t sum_l = 0, sum_r = 0;
  std::vector<BitTape> tapes(n);
  for (std::uint64_t combo = 0; combo < total; ++combo) {
    for (NodeId v = 0; v < n; ++v) tapes[v] = BitTape((combo >> (v * depth)) & mask, depth);
    const auto run = reference_recursive_mis(g, tapes, depth);
    sum_l += run.records.front().size_L;
    sum_r += run.records.front().size_R;
  }
  ExactExpectation e;
  e.left = Rational(sum_l, static_cast<std::int64_t>(total));
  e.right = Rational(sum_r, static_cast<std::int64_t>(total));
  e.tapes = total;
  e.root_size = n;
  return e;
}

}  // namespace smis
