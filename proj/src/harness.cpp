#include "smis/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "smis/errors.hpp"
#include "smis/oracle.hpp"

namespace smis {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t value = 0;
  // Powers of two may be written 2^e.
  if (text.starts_with("2^")) {
    const auto e = parse_u64(text.substr(2), what);
    if (e > 62) throw ConfigError(std::string(what) + " exponent too large");
    return std::uint64_t{1} << e;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("invalid " + std::string(what) + " '" + s + "'");
  }
  return v;
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
  std::vector<std::size_t> sizes;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = parse_u64(text.substr(0, dots), "n");
    const auto hi = parse_u64(text.substr(dots + 2), "n");
    if (lo < 1 || hi < lo) throw ConfigError("n sweep must satisfy 1 <= a <= b");
    for (std::uint64_t v = lo; v <= hi; v *= 2) sizes.push_back(v);
  } else {
    for (auto part : split(text, '|')) sizes.push_back(parse_u64(part, "n"));
  }
  return sizes;
}

}  // namespace

Graph GraphRequest::build(std::uint64_t run_seed) const {
  GraphSpec s = spec;
  if (seed_from_run) s.seed = run_seed;
  return generate(s);
}

bool GraphRequest::depends_on_seed() const {
  return seed_from_run && (spec.family == GraphFamily::Gnp || spec.family == GraphFamily::Tree);
}

std::vector<GraphRequest> expand_graph_requests(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const auto family = parse_family(text.substr(0, colon));
  if (family == GraphFamily::File) {
    if (colon == std::string_view::npos || colon + 1 >= text.size()) {
      throw ConfigError("file graphs need a path: file:<path>");
    }
    GraphRequest r;
    r.spec.family = family;
    r.spec.path = std::string(text.substr(colon + 1));
    r.seed_from_run = false;
    r.label = std::string(text);
    return {r};
  }

  std::vector<std::size_t> sizes;
  std::optional<std::string_view> p_text;
  std::optional<std::uint64_t> seed, rows, cols;
  if (colon != std::string_view::npos) {
    for (auto kv : split(text.substr(colon + 1), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(kv) + "'");
      const auto key = trim(kv.substr(0, eq));
      const auto value = trim(kv.substr(eq + 1));
      if (key == "n") sizes = parse_sizes(value);
      else if (key == "p") p_text = value;
      else if (key == "seed") seed = parse_u64(value, "seed");
      else if (key == "rows") rows = parse_u64(value, "rows");
      else if (key == "cols") cols = parse_u64(value, "cols");
      else throw ConfigError("unknown graph parameter '" + std::string(key) + "'");
    }
  }

  const std::string fam(to_string(family));
  auto base = [&] {
    GraphRequest r;
    r.spec.family = family;
    r.seed_from_run = !seed.has_value();
    r.spec.seed = seed.value_or(0);
    return r;
  };
  auto seed_suffix = [&] { return seed ? ",seed=" + std::to_string(*seed) : std::string(); };

  if (family == GraphFamily::Grid) {
    if (!rows || !cols) throw ConfigError("grid requires rows and cols");
    if (!sizes.empty() || p_text) throw ConfigError("grid takes rows and cols only");
    auto r = base();
    r.spec.rows = *rows;
    r.spec.cols = *cols;
    r.spec.n = *rows * *cols;
    r.label = fam + ":rows=" + std::to_string(*rows) + ",cols=" + std::to_string(*cols) + seed_suffix();
    return {r};
  }
  if (sizes.empty()) throw ConfigError(fam + " requires n");
  if (rows || cols) throw ConfigError(fam + " does not take rows/cols");
  if ((family == GraphFamily::Gnp) != p_text.has_value()) {
    throw ConfigError(family == GraphFamily::Gnp ? "gnp requires p" : fam + " does not take p");
  }

  std::vector<GraphRequest> out;
  for (std::size_t n : sizes) {
    if (n < 1) throw ConfigError(fam + " requires n >= 1");
    auto r = base();
    r.spec.n = n;
    r.label = fam + ":n=" + std::to_string(n);
    if (p_text) {
      if (p_text->ends_with("/n")) {
        r.spec.p = parse_double(p_text->substr(0, p_text->size() - 2), "p") / static_cast<double>(n);
      } else {
        r.spec.p = parse_double(*p_text, "p");
      }
      if (!(r.spec.p >= 0.0 && r.spec.p <= 1.0)) throw ConfigError("gnp requires 0 <= p <= 1");
      r.label += ",p=" + std::string(*p_text);
    }
    r.label += seed_suffix();
    out.push_back(std::move(r));
  }
  return out;
}

GraphRequest parse_graph_request(std::string_view text) {
  auto all = expand_graph_requests(text);
  if (all.size() != 1) throw ConfigError("expected a single graph, got a sweep of " + std::to_string(all.size()));
  return all.front();
}

SeedRange parse_seed_range(std::string_view text) {
  text = trim(text);
  SeedRange r;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    r.first = parse_u64(text.substr(0, dots), "seed");
    r.last = parse_u64(text.substr(dots + 2), "seed");
  } else {
    r.first = r.last = parse_u64(text, "seed");
  }
  if (r.last < r.first) throw ConfigError("empty seed range '" + std::string(text) + "'");
  return r;
}

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw ConfigError("experiment needs at least one algorithm");
  if (graphs.empty()) throw ConfigError("experiment needs at least one graph");
  if (seeds.last < seeds.first) throw ConfigError("experiment needs at least one seed");
  if (c < 1) throw ConfigError("c must be >= 1");
  if (round_cap < 1) throw ConfigError("cap must be >= 1");
  for (const auto& g : graphs) expand_graph_requests(g);
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream out;
  out << "algorithms=";
  for (std::size_t i = 0; i < algorithms.size(); ++i) out << (i ? "," : "") << to_string(algorithms[i]);
  out << "\ngraphs=";
  for (std::size_t i = 0; i < graphs.size(); ++i) out << (i ? ";" : "") << graphs[i];
  out << "\nseeds=" << seeds.first << ".." << seeds.last;
  out << "\nc=" << c;
  out << "\nK=" << (depth ? std::to_string(*depth) : "auto");
  out << "\ncap=" << round_cap;
  out << "\ntiming=" << (record_timing ? 1 : 0) << '\n';
  return out.str();
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  bool have_seeds = false;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "algorithms") {
      for (auto a : split(value, ',')) cfg.algorithms.push_back(parse_algorithm(a));
    } else if (key == "graphs") {
      for (auto g : split(value, ';')) {
        if (!g.empty()) cfg.graphs.emplace_back(g);
      }
    } else if (key == "seeds") {
      cfg.seeds = parse_seed_range(value);
      have_seeds = true;
    } else if (key == "c") {
      cfg.c = static_cast<int>(parse_u64(value, "c"));
    } else if (key == "K") {
      cfg.depth = static_cast<int>(parse_u64(value, "K"));
    } else if (key == "cap") {
      cfg.round_cap = static_cast<Round>(parse_u64(value, "cap"));
    } else if (key == "output") {
      cfg.output = std::string(value);
    } else if (key == "timing") {
      cfg.record_timing = parse_u64(value, "timing") != 0;
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_seeds) throw ConfigError("config is missing seeds");
  return cfg;
}

CellOutcome run_cell(const Graph& g, const GraphRequest& request, const AlgoParams& params,
                     std::uint64_t seed, const EngineConfig& engine, bool record_timing) {
  CellOutcome out;
  ResultRow& row = out.row;
  row.algo = std::string(to_string(params.algorithm));
  row.family = std::string(to_string(request.spec.family));
  row.n = g.n();
  row.m = g.m();
  row.seed = seed;
  row.graph_label = request.label;

  const auto t0 = std::chrono::steady_clock::now();
  const Trace* trace = nullptr;
  try {
    out.run = run_algorithm(g, params, seed, engine);
    trace = &out.run.trace;
    row.metrics = compute_metrics(g, *trace);
    row.verdict = row.metrics.verdict.name();
  } catch (const TimeoutError& e) {
    out.timed_out = true;
    out.run.trace = e.partial();
    trace = &out.run.trace;
    row.metrics = compute_metrics(g, *trace, true);
    row.verdict = "timeout";
  }
  const auto t1 = std::chrono::steady_clock::now();
  row.rank_tie = out.run.rank_tie;
  row.messages_sent = trace->messages_sent;
  row.max_payload_bits = trace->max_payload_bits;
  if (record_timing) {
    row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  }
  return out;
}

unsigned worker_count() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MIS_SIM_WORKERS")) {
    try {
      const auto v = parse_u64(env, "MIS_SIM_WORKERS");
      if (v >= 1) hw = static_cast<unsigned>(std::min<std::uint64_t>(v, 1024));
    } catch (const ConfigError&) {
    }
  }
  return hw;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, unsigned workers) {
  config.validate();
  std::vector<GraphRequest> requests;
  for (const auto& t : config.graphs) {
    auto expanded = expand_graph_requests(t);
    requests.insert(requests.end(), expanded.begin(), expanded.end());
  }
  // Seed-independent graphs are shared read-only by every worker.
  std::vector<std::optional<Graph>> shared(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (!requests[i].depends_on_seed()) shared[i] = requests[i].build(0);
  }

  struct Unit {
    std::size_t request;
    std::uint64_t seed;
  };
  std::vector<Unit> units;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    for (std::uint64_t s = config.seeds.first;; ++s) {
      units.push_back({i, s});
      if (s == config.seeds.last) break;
    }
  }

  EngineConfig engine;
  engine.round_cap = config.round_cap;
  std::vector<std::vector<ResultRow>> results(units.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t u = next.fetch_add(1);
      if (u >= units.size()) return;
      try {
        const auto& unit = units[u];
        const auto& req = requests[unit.request];
        std::optional<Graph> local;
        if (!shared[unit.request]) local = req.build(unit.seed);
        const Graph& g = shared[unit.request] ? *shared[unit.request] : *local;
        for (Algorithm a : config.algorithms) {
          AlgoParams params{a, config.depth, config.c};
          results[u].push_back(run_cell(g, req, params, unit.seed, engine, config.record_timing).row);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(units.size());
      }
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(units.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (auto& r : results) {
    for (auto& row : r) rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.algo, a.family, a.n, a.seed, a.graph_label) <
           std::tie(b.algo, b.family, b.n, b.seed, b.graph_label);
  });
  return rows;
}

std::string format_csv_row(const ResultRow& r) {
  std::ostringstream out;
  out << r.algo << ',' << r.family << ',' << r.n << ',' << r.m << ',' << r.seed << ','
      << r.metrics.avg_awake.to_fixed(6) << ',' << r.metrics.max_awake << ',' << r.metrics.total_rounds
      << ',' << r.metrics.avg_finish.to_fixed(6) << ',' << r.metrics.mis_size << ',' << r.verdict << ','
      << (r.rank_tie ? 1 : 0) << ',' << r.runtime_ms;
  return out.str();
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += format_csv_row(r);
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

nlohmann::json experiment_manifest(const ExperimentConfig& config, std::size_t rows) {
  const auto canonical = config.canonical();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical)));
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"config", canonical},
          {"config_hash", hash},
          {"rows", rows},
          {"csv_header", kCsvHeader}};
}

namespace {

// Six-decimal rendering as a JSON number.
double fixed6(const Rational& r) { return std::strtod(r.to_fixed(6).c_str(), nullptr); }

}  // namespace

nlohmann::json metrics_json(const ResultRow& r) {
  return {{"algo", r.algo},
          {"family", r.family},
          {"n", r.n},
          {"m", r.m},
          {"seed", r.seed},
          {"avg_awake", fixed6(r.metrics.avg_awake)},
          {"max_awake", r.metrics.max_awake},
          {"total_rounds", r.metrics.total_rounds},
          {"avg_finish", fixed6(r.metrics.avg_finish)},
          {"mis_size", r.metrics.mis_size},
          {"verdict", r.verdict},
          {"rank_tie_flag", r.rank_tie ? 1 : 0},
          {"runtime_ms", r.runtime_ms},
          {"avg_awake_exact", std::to_string(r.metrics.avg_awake.num()) + "/" +
                                  std::to_string(r.metrics.avg_awake.den())},
          {"verdict_detail", r.verdict == "timeout" ? "round cap exceeded" : r.metrics.verdict.describe()},
          {"messages_sent", r.messages_sent},
          {"max_payload_bits", r.max_payload_bits},
          {"graph", r.graph_label}};
}

nlohmann::json trace_json(const Trace& t) {
  nlohmann::json outputs = nlohmann::json::array();
  for (auto s : t.outputs) outputs.push_back(std::string(to_string(s)));
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : t.call_records) {
    records.push_back({{"path", r.path},
                       {"k", r.k},
                       {"size_U", r.size_U},
                       {"size_L", r.size_L},
                       {"size_R", r.size_R},
                       {"isolated_joins", r.isolated_joins},
                       {"eliminations", r.eliminations},
                       {"second_detection_joins", r.second_detection_joins}});
  }
  return {{"n", t.outputs.size()},
          {"total_rounds", t.total_rounds},
          {"messages_sent", t.messages_sent},
          {"messages_delivered", t.messages_delivered},
          {"messages_dropped", t.messages_dropped},
          {"outputs", outputs},
          {"awake_rounds", t.awake_rounds},
          {"last_awake", t.last_awake},
          {"call_records", records}};
}

std::vector<MisStatus> trace_outputs(const nlohmann::json& doc) {
  if (!doc.contains("outputs") || !doc["outputs"].is_array()) {
    throw ConfigError("trace document has no outputs array");
  }
  std::vector<MisStatus> out;
  for (const auto& v : doc["outputs"]) {
    const auto s = v.get<std::string>();
    if (s == "true") out.push_back(MisStatus::True);
    else if (s == "false") out.push_back(MisStatus::False);
    else if (s == "unknown") out.push_back(MisStatus::Unknown);
    else throw ConfigError("bad output value '" + s + "' in trace");
  }
  return out;
}

VerifyOutcome run_verify(const VerifyOptions& opt) {
  static const std::set<std::string> known{"mis", "equiv", "pruning", "zdecay", "exact"};
  if (opt.checks.empty()) throw ConfigError("no checks requested");
  for (const auto& c : opt.checks) {
    if (!known.contains(c)) throw ConfigError("unknown check '" + c + "'");
  }
  const Algorithm algo = opt.params.algorithm;
  const bool recursive = algo == Algorithm::Sleeping || algo == Algorithm::Fast;
  if (algo == Algorithm::Luby && opt.checks.contains("equiv")) {
    throw ConfigError("equiv is not defined for luby");
  }
  if (!recursive && (opt.checks.contains("pruning") || opt.checks.contains("zdecay"))) {
    throw ConfigError("pruning/zdecay need a recursive algorithm (sleeping or fast)");
  }
  if (algo != Algorithm::Sleeping && opt.checks.contains("exact")) {
    throw ConfigError("exact enumeration is defined for the sleeping algorithm");
  }
  if ((opt.checks.contains("pruning") || opt.checks.contains("zdecay")) && opt.seeds.count() < 2) {
    throw ConfigError("pruning/zdecay need at least two seeds");
  }

  const auto request = parse_graph_request(opt.graph);
  VerifyOutcome out;
  auto& report = out.report;
  report["algo"] = std::string(to_string(algo));
  report["graph"] = request.label;
  report["seeds"] = {opt.seeds.first, opt.seeds.last};

  std::optional<Graph> shared;
  if (!request.depends_on_seed()) shared = request.build(0);

  if (opt.checks.contains("exact")) {
    const Graph g = shared ? *shared : request.build(opt.seeds.first);
    const int depth = recursion_depth(opt.params, g.n());
    const auto ex = exact_expectation(g, depth);
    const auto n = static_cast<std::int64_t>(g.n());
    const bool left_ok = ex.left <= Rational(n, 2);
    const bool right_ok = ex.right <= Rational(n, 4);
    report["exact"] = {{"K", depth},
                       {"tapes", ex.tapes},
                       {"E_L", std::to_string(ex.left.num()) + "/" + std::to_string(ex.left.den())},
                       {"E_R", std::to_string(ex.right.num()) + "/" + std::to_string(ex.right.den())},
                       {"bound_L", std::to_string(n) + "/2"},
                       {"bound_R", std::to_string(n) + "/4"},
                       {"pass", left_ok && right_ok}};
    out.summary.push_back("exact: E[|L|]=" + ex.left.to_fixed(6) + " (<= " + Rational(n, 2).to_fixed(6) +
                          "), E[|R|]=" + ex.right.to_fixed(6) + " (<= " + Rational(n, 4).to_fixed(6) +
                          ") over " + std::to_string(ex.tapes) + " tapes: " +
                          (left_ok && right_ok ? "PASS" : "FAIL"));
    out.passed = out.passed && left_ok && right_ok;
  }

  const bool need_runs = opt.checks.contains("mis") || opt.checks.contains("equiv") ||
                         opt.checks.contains("pruning") || opt.checks.contains("zdecay");
  if (!need_runs) return out;

  std::size_t valid = 0, invalid = 0, unexplained = 0, timeouts = 0;
  std::size_t match = 0, mismatch = 0, tie_skipped = 0, invalid_skipped = 0;
  nlohmann::json failures = nlohmann::json::array();
  nlohmann::json mismatches = nlohmann::json::array();
  std::vector<std::vector<CallRecord>> records;
  std::size_t n = 0;
  int depth = 0;
  for (std::uint64_t seed = opt.seeds.first;; ++seed) {
    const Graph g = shared ? *shared : request.build(seed);
    n = g.n();
    auto cell = run_cell(g, request, opt.params, seed, EngineConfig{});
    depth = cell.run.depth;
    if (cell.timed_out) {
      ++timeouts;
      ++invalid;
      ++unexplained;
      failures.push_back({{"seed", seed}, {"verdict", "timeout"}});
    } else if (cell.row.metrics.verdict.valid()) {
      ++valid;
    } else {
      ++invalid;
      const bool explained = cell.run.rank_tie || cell.run.base_multiplicity || cell.run.leaf_failures > 0;
      if (!explained) ++unexplained;
      failures.push_back({{"seed", seed},
                          {"verdict", cell.row.metrics.verdict.describe()},
                          {"rank_tie", cell.run.rank_tie},
                          {"base_multiplicity", cell.run.base_multiplicity},
                          {"leaf_failures", cell.run.leaf_failures}});
    }
    if (opt.checks.contains("equiv") && !cell.timed_out) {
      const auto eq = equivalence_check(g, algo, cell.run);
      switch (eq.outcome) {
        case EquivalenceReport::Outcome::Match: ++match; break;
        case EquivalenceReport::Outcome::SkippedTie: ++tie_skipped; break;
        case EquivalenceReport::Outcome::SkippedInvalid: ++invalid_skipped; break;
        case EquivalenceReport::Outcome::Mismatch:
          ++mismatch;
          mismatches.push_back({{"seed", seed}, {"detail", eq.describe()}});
          break;
      }
    }
    if (recursive) records.push_back(std::move(cell.run.trace.call_records));
    if (seed == opt.seeds.last) break;
  }
  const std::size_t total = valid + invalid;

  if (opt.checks.contains("mis")) {
    const double rate = static_cast<double>(valid) / static_cast<double>(total);
    const bool pass = rate >= 0.99 && (algo != Algorithm::Sleeping || unexplained == 0);
    report["mis"] = {{"runs", total},          {"valid", valid},       {"invalid", invalid},
                     {"unexplained", unexplained}, {"timeouts", timeouts}, {"valid_rate", rate},
                     {"failures", failures},   {"pass", pass}};
    out.summary.push_back("mis: " + std::to_string(valid) + "/" + std::to_string(total) + " valid, " +
                          std::to_string(unexplained) + " unexplained failures: " + (pass ? "PASS" : "FAIL"));
    out.passed = out.passed && pass;
  }
  if (opt.checks.contains("equiv")) {
    const bool pass = mismatch == 0;
    report["equiv"] = {{"match", match},
                       {"mismatch", mismatch},
                       {"skipped_tie", tie_skipped},
                       {"skipped_invalid", invalid_skipped},
                       {"mismatches", mismatches},
                       {"pass", pass}};
    out.summary.push_back("equiv: " + std::to_string(match) + " match, " + std::to_string(mismatch) +
                          " mismatch, " + std::to_string(tie_skipped) + " tie-skipped, " +
                          std::to_string(invalid_skipped) + " invalid-skipped: " + (pass ? "PASS" : "FAIL"));
    out.passed = out.passed && pass;
  }
  if (opt.checks.contains("pruning") || opt.checks.contains("zdecay")) {
    const auto pr = pruning_stats(records, n, depth);
    if (opt.checks.contains("pruning")) {
      const bool pass = !pr.root_left_violation && !pr.root_right_violation;
      nlohmann::json levels = nlohmann::json::array();
      for (const auto& l : pr.levels) {
        levels.push_back({{"k", l.k},
                          {"left_ratio", l.left_ratio.mean},
                          {"left_ratio_se", l.left_ratio.se},
                          {"right_ratio", l.right_ratio.mean},
                          {"right_ratio_se", l.right_ratio.se}});
      }
      report["pruning"] = {{"root_L_mean", pr.root_left.mean}, {"root_L_se", pr.root_left.se},
                           {"root_L_bound", static_cast<double>(n) / 2},
                           {"root_R_mean", pr.root_right.mean}, {"root_R_se", pr.root_right.se},
                           {"root_R_bound", static_cast<double>(n) / 4},
                           {"levels", levels},                  {"pass", pass}};
      std::ostringstream s;
      s << "pruning: root mean |L|=" << pr.root_left.mean << " (SE " << pr.root_left.se << ", bound "
        << static_cast<double>(n) / 2 << "), root mean |R|=" << pr.root_right.mean << " (SE "
        << pr.root_right.se << ", bound " << static_cast<double>(n) / 4 << "): " << (pass ? "PASS" : "FAIL");
      out.summary.push_back(s.str());
      out.passed = out.passed && pass;
    }
    if (opt.checks.contains("zdecay")) {
      nlohmann::json zs = nlohmann::json::array();
      bool pass = true;
      for (const auto& z : pr.z) {
        zs.push_back({{"i", z.i}, {"mean", z.z.mean}, {"se", z.z.se}, {"bound", z.bound},
                      {"violation", z.violation}});
        pass = pass && !z.violation;
      }
      report["zdecay"] = {{"levels", zs}, {"pass", pass}};
      out.summary.push_back(std::string("zdecay: ") + std::to_string(pr.z.size()) + " levels checked against (3/4)^i n: " +
                            (pass ? "PASS" : "FAIL"));
      out.passed = out.passed && pass;
    }
  }
  report["pass"] = out.passed;
  return out;
}

}  // namespace smis
