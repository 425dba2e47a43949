// mis_sim: single runs, experiment sweeps, verification campaigns and trace
// re-checks for the sleeping-model MIS simulator.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "smis/errors.hpp"
#include "smis/harness.hpp"
#include "smis/oracle.hpp"

namespace {

constexpr const char* kGraphGrammar = R"(Graph specs:
  family:key=val,...   family in {gnp, cycle, path, complete, star, tree, grid}
  file:<path>          edge list ("# n=<N>" header, then "u v" per line)
Keys: n (size), p (gnp edge probability; "x/n" scales with n), rows, cols
(grid), seed (fixes the graph; otherwise the run seed is used).
In experiments n may be a doubling sweep "16..4096" / "2^4..2^12" or a list
"8|32|128", and several graphs are separated by ';'.)";

smis::AlgoParams make_params(const std::string& algo, int c, int depth) {
  smis::AlgoParams p;
  p.algorithm = smis::parse_algorithm(algo);
  p.c = c;
  if (depth >= 0) p.depth = depth;
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw smis::ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw smis::ConfigError("cannot write '" + path + "'");
  out << data;
  if (!out.flush()) throw smis::ConfigError("cannot write '" + path + "'");
}

int cmd_run(const std::string& algo, const std::string& graph, std::uint64_t seed, int c, int depth,
            std::int64_t cap, bool no_ff, const std::string& trace_path) {
  const auto params = make_params(algo, c, depth);
  const auto request = smis::parse_graph_request(graph);
  const auto g = request.build(seed);
  smis::EngineConfig engine;
  engine.round_cap = cap;
  engine.fast_forward = !no_ff;
  auto cell = smis::run_cell(g, request, params, seed, engine);
  auto doc = smis::metrics_json(cell.row);
  doc["c"] = params.c;
  doc["K"] = cell.run.depth;
  doc["cap"] = cap;
  doc["fast_forward"] = engine.fast_forward;
  if (!trace_path.empty()) write_file(trace_path, smis::trace_json(cell.run.trace).dump(1) + "\n");
  std::cout << doc.dump() << '\n';
  return cell.row.verdict == "valid" ? 0 : 2;
}

int cmd_experiment(smis::ExperimentConfig cfg) {
  cfg.validate();
  if (cfg.output.empty()) throw smis::ConfigError("experiment needs an output path");
  const auto rows = smis::run_experiment(cfg, smis::worker_count());
  write_file(cfg.output, smis::format_csv(rows));
  write_file(cfg.output + ".manifest.json", smis::experiment_manifest(cfg, rows.size()).dump(2) + "\n");
  std::size_t timeouts = 0;
  for (const auto& r : rows) timeouts += r.verdict == "timeout";
  std::cerr << "wrote " << rows.size() << " rows to " << cfg.output;
  if (timeouts) std::cerr << " (" << timeouts << " timeouts)";
  std::cerr << '\n';
  return 0;
}

int cmd_verify(const smis::VerifyOptions& opt, const std::string& report_path) {
  const auto out = smis::run_verify(opt);
  for (const auto& line : out.summary) std::cout << line << '\n';
  const auto text = out.report.dump(2) + "\n";
  if (report_path.empty()) std::cout << text;
  else write_file(report_path, text);
  return out.passed ? 0 : 2;
}

int cmd_check(const std::string& graph, const std::string& trace_path, std::uint64_t seed) {
  const auto g = smis::parse_graph_request(graph).build(seed);
  const auto doc = nlohmann::json::parse(read_file(trace_path));
  const auto outputs = smis::trace_outputs(doc);
  if (outputs.size() != g.n()) {
    throw smis::ConfigError("trace has " + std::to_string(outputs.size()) + " outputs, graph has " +
                            std::to_string(g.n()) + " nodes");
  }
  const auto v = smis::check_mis(g, outputs);
  std::cout << nlohmann::json{{"verdict", v.name()}, {"detail", v.describe()}}.dump() << '\n';
  return v.valid() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic sleeping-model MIS simulator", std::string(smis::kToolName)};
  app.footer(kGraphGrammar);
  app.set_version_flag("--version", std::string(smis::kToolVersion));
  app.require_subcommand(1);

  const std::vector<std::string> algos{"sleeping", "fast", "greedy", "luby"};

  std::string algo = "sleeping", graph, trace_path, config_path, output, seeds_text, checks_text = "mis";
  std::string report_path;
  std::uint64_t seed = 0;
  int c = 6, depth = -1;
  std::int64_t cap = std::int64_t{1} << 40;
  bool no_ff = false, timing = false;
  std::vector<std::string> exp_algos, exp_graphs;

  auto* run = app.add_subcommand("run", "Run one simulation and print JSON metrics");
  run->add_option("--algo", algo, "sleeping | fast | greedy | luby")->check(CLI::IsMember(algos));
  run->add_option("--graph", graph, "graph spec (see below)")->required();
  run->add_option("--seed", seed, "run seed");
  run->add_option("--c", c, "leaf window multiplier of the fast variant")->check(CLI::PositiveNumber);
  run->add_option("--K", depth, "recursion depth override")->check(CLI::NonNegativeNumber);
  run->add_option("--cap", cap, "round cap")->check(CLI::PositiveNumber);
  run->add_option("--emit-trace", trace_path, "write the trace JSON here");
  run->add_flag("--no-fast-forward", no_ff, "step every round instead of skipping idle ones");

  auto* exp = app.add_subcommand("experiment", "Run a sweep and write CSV plus a manifest");
  exp->add_option("--config", config_path, "key = value config file");
  exp->add_option("--algos", exp_algos, "algorithms")->delimiter(',')->check(CLI::IsMember(algos));
  exp->add_option("--graphs", exp_graphs, "graph templates, ';' separated")->delimiter(';');
  exp->add_option("--seeds", seeds_text, "seed range a..b");
  exp->add_option("--c", c, "leaf window multiplier")->check(CLI::PositiveNumber);
  exp->add_option("--K", depth, "recursion depth override")->check(CLI::NonNegativeNumber);
  exp->add_option("--cap", cap, "round cap")->check(CLI::PositiveNumber);
  exp->add_option("--output,-o", output, "CSV path");
  exp->add_flag("--timing", timing, "record wall-clock runtime_ms (breaks byte-identity)");

  auto* ver = app.add_subcommand("verify", "Run oracle checks over a seed range");
  ver->add_option("--algo", algo, "sleeping | fast | greedy | luby")->check(CLI::IsMember(algos));
  ver->add_option("--graph", graph, "graph spec")->required();
  ver->add_option("--seeds", seeds_text, "seed range a..b")->required();
  ver->add_option("--checks", checks_text, "comma list of mis, equiv, pruning, zdecay, exact");
  ver->add_option("--c", c, "leaf window multiplier")->check(CLI::PositiveNumber);
  ver->add_option("--K", depth, "recursion depth override")->check(CLI::NonNegativeNumber);
  ver->add_option("--report", report_path, "write the JSON report here instead of stdout");

  auto* chk = app.add_subcommand("check", "Re-validate the outputs stored in a trace file");
  chk->add_option("--graph", graph, "graph spec")->required();
  chk->add_option("--trace", trace_path, "trace JSON")->required();
  chk->add_option("--seed", seed, "seed the graph was built with");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run) return cmd_run(algo, graph, seed, c, depth, cap, no_ff, trace_path);
    if (*exp) {
      smis::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = smis::parse_experiment_config(read_file(config_path));
      if (!exp_algos.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : exp_algos) cfg.algorithms.push_back(smis::parse_algorithm(a));
      }
      if (!exp_graphs.empty()) cfg.graphs = exp_graphs;
      if (!seeds_text.empty()) cfg.seeds = smis::parse_seed_range(seeds_text);
      else if (config_path.empty()) throw smis::ConfigError("experiment needs --seeds");
      if (exp->count("--c")) cfg.c = c;
      if (depth >= 0) cfg.depth = depth;
      if (exp->count("--cap")) cfg.round_cap = cap;
      if (!output.empty()) cfg.output = output;
      if (timing) cfg.record_timing = true;
      return cmd_experiment(cfg);
    }
    if (*ver) {
      smis::VerifyOptions opt;
      opt.params = make_params(algo, c, depth);
      opt.graph = graph;
      opt.seeds = smis::parse_seed_range(seeds_text);
      std::stringstream ss(checks_text);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) opt.checks.insert(item);
      }
      return cmd_verify(opt, report_path);
    }
    if (*chk) return cmd_check(graph, trace_path, seed);
  } catch (const std::exception& e) {
    std::cerr << "mis_sim: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
