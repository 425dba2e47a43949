#include <doctest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(MIS_SIM_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / ("mis_sim_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("run prints metrics") {
  const auto r = run("run --algo sleeping --graph cycle:n=64 --seed 7");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "valid");
  CHECK(j["total_rounds"] == 3 * ((1LL << 18) - 1));
  CHECK(j["K"] == 18);

  const auto g = run("run --algo greedy --graph complete:n=8 --seed 1");
  CHECK(g.code == 0);
  CHECK(nlohmann::json::parse(g.out)["mis_size"] == 1);
}

TEST_CASE("usage errors exit 1") {
  const auto missing = run("run --algo sleeping --graph file:missing.edges --seed 0");
  CHECK(missing.code == 1);
  CHECK(missing.out.find("missing.edges") != std::string::npos);
  CHECK(run("run --algo bogus --graph cycle:n=8").code == 1);
  CHECK(run("run --graph hypercube:n=8").code == 1);
  CHECK(run("run --graph cycle:n=8 --frobnicate").code == 1);
  CHECK(run("verify --graph cycle:n=8 --seeds 5..4").code == 1);
  CHECK(run("verify --graph complete:n=9 --seeds 0..0 --checks exact").code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("an invalid MIS exits 2") {
  // K = 0 puts every node in the all-join base case.
  const auto r = run("run --graph path:n=3 --K 0 --seed 0");
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.out)["verdict"] == "not_independent");
}

TEST_CASE("trace dump re-validates") {
  const auto dir = scratch();
  const auto trace = (dir / "t.json").string();
  CHECK(run("run --graph tree:n=40 --seed 3 --emit-trace " + trace).code == 0);
  const auto c = run("check --graph tree:n=40 --seed 3 --trace " + trace);
  CHECK(c.code == 0);
  CHECK(c.out.find("\"valid\"") != std::string::npos);
  CHECK(run("check --graph tree:n=41 --seed 3 --trace " + trace).code == 1);
}

TEST_CASE("file graphs") {
  const auto dir = scratch();
  std::ofstream(dir / "g.edges") << "# n=5\n0 1\n1 2\n2 3\n";
  const auto r = run("run --graph file:" + (dir / "g.edges").string() + " --seed 2");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == 5);
  CHECK(j["family"] == "file");
}

TEST_CASE("experiment output is byte identical") {
  const auto dir = scratch();
  std::ofstream(dir / "e.cfg") << "algorithms = sleeping, greedy\ngraphs = cycle:n=16..64\nseeds = 0..4\n";
  const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  CHECK(run("experiment --config " + (dir / "e.cfg").string() + " --output " + a).code == 0);
  CHECK(run("experiment --config " + (dir / "e.cfg").string() + " --output " + b).code == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.starts_with("algo,family,n,m,seed,avg_awake,max_awake,total_rounds,avg_finish,mis_size,verdict,rank_tie_flag,runtime_ms\n"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 3 * 5);
  const auto manifest = nlohmann::json::parse(slurp(a + ".manifest.json"));
  CHECK(manifest["rows"] == 30);
  CHECK(manifest["config_hash"] == nlohmann::json::parse(slurp(b + ".manifest.json"))["config_hash"]);

  CHECK(run("experiment --algos sleeping --graphs cycle:n=8 --seeds 0..1 --output /nonexistent/dir/x.csv").code == 1);
  CHECK(run("experiment --algos sleeping --graphs cycle:n=8 --output " + a).code == 1);
}

TEST_CASE("verify summaries") {
  const auto r = run("verify --algo sleeping --graph cycle:n=64 --seeds 0..99 --checks mis,equiv");
  CHECK(r.code == 0);
  CHECK(r.out.find("mis: ") != std::string::npos);
  CHECK(r.out.find("0 mismatch") != std::string::npos);

  const auto e = run("verify --checks exact --graph path:n=2 --seeds 0");
  CHECK(e.code == 0);
  CHECK(e.out.find("E[|R|]=0.500000") != std::string::npos);
}

TEST_CASE("stepping matches fast forward through the CLI") {
  const auto a = nlohmann::json::parse(run("run --graph gnp:n=12,p=0.3 --seed 5").out);
  const auto b = nlohmann::json::parse(run("run --graph gnp:n=12,p=0.3 --seed 5 --no-fast-forward").out);
  for (const char* k : {"avg_awake", "max_awake", "total_rounds", "avg_finish", "mis_size", "verdict"}) {
    CHECK(a[k] == b[k]);
  }
}
