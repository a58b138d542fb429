#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "netlab/ingest.hpp"

using namespace netlab;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = NETLAB_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("netlab_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string dir(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  return j;
}

std::string graph_args(const std::string& dir) {
  return " --users " + dir + "/users.csv --follows " + dir + "/follows.csv ";
}

}  // namespace

TEST_CASE("simulate + distribution artifacts are byte-identical across runs") {
  TempDir tmp;
  const auto sim = tmp.dir("sim");
  REQUIRE(run("simulate --model ba --n 1000 --m 2 --seed 7 --out-dir " + sim) == 0);

  const auto d1 = tmp.dir("d1"), d2 = tmp.dir("d2");
  REQUIRE(run("distribution" + graph_args(sim) + "--binning exact --fit --out-dir " + d1) == 0);
  REQUIRE(run("distribution" + graph_args(sim) + "--binning exact --fit --out-dir " + d2) == 0);
  CHECK(fnv1a_file(d1 + "/histogram.csv") == fnv1a_file(d2 + "/histogram.csv"));
  CHECK(fnv1a_file(d1 + "/power_law_fit.json") == fnv1a_file(d2 + "/power_law_fit.json"));

  // re-simulating with the same seed also reproduces the dataset bytes
  const auto sim2 = tmp.dir("sim2");
  REQUIRE(run("simulate --model ba --n 1000 --m 2 --seed 7 --out-dir " + sim2) == 0);
  CHECK(fnv1a_file(sim + "/users.csv") == fnv1a_file(sim2 + "/users.csv"));
  CHECK(fnv1a_file(sim + "/follows.csv") == fnv1a_file(sim2 + "/follows.csv"));
}

TEST_CASE("filter command: count report matches the brute-force rule") {
  TempDir tmp;
  // 20-user fixture with 3 orgs, deterministic edges.
  std::mt19937_64 rng(42);
  std::vector<UserRecord> users;
  std::vector<FollowEdge> edges;
  for (UserId i = 1; i <= 20; ++i) {
    users.push_back({i, "u" + std::to_string(i), 0,
                     i <= 3 ? UserKind::Organization : UserKind::Individual, false, false});
  }
  for (int i = 0; i < 120; ++i) {
    const UserId a = 1 + rng() % 20, b = 1 + rng() % 20;
    if (a != b) edges.push_back({a, b, static_cast<Timestamp>(i)});
  }
  const auto in = tmp.dir("in");
  fs::create_directories(in);
  write_users_csv(in + "/users.csv", users);
  write_follows_csv(in + "/follows.csv", edges);

  // Independent oracle over the emitted file contents.
  auto loaded_users = load_users_csv(in + "/users.csv");
  auto loaded_edges = load_follows_csv(in + "/follows.csv");
  std::set<UserId> alive;
  for (const auto& u : loaded_users) {
    if (u.kind != UserKind::Organization) alive.insert(u.id);
  }
  std::map<UserId, std::size_t> indeg;
  std::set<std::pair<UserId, UserId>> seen;
  std::size_t flag_edges = 0;
  for (const auto& e : loaded_edges) {
    if (!seen.insert({e.follower, e.followee}).second) continue;
    if (alive.count(e.follower) && alive.count(e.followee)) {
      ++indeg[e.followee];
      ++flag_edges;
    }
  }
  std::set<UserId> surv;
  for (UserId u : alive) {
    if (indeg[u] > 2) surv.insert(u);
  }
  std::size_t surv_edges = 0;
  seen.clear();
  for (const auto& e : loaded_edges) {
    if (!seen.insert({e.follower, e.followee}).second) continue;
    if (surv.count(e.follower) && surv.count(e.followee)) ++surv_edges;
  }

  const auto out = tmp.dir("out");
  REQUIRE(run("filter" + graph_args(in) + "--min-followers 2 --out-dir " + out) == 0);
  auto report = read_json(out + "/filter_report.json");
  CHECK(report["after_flag_filter"]["users"] == alive.size());
  CHECK(report["after_flag_filter"]["links"] == flag_edges);
  CHECK(report["after_degree_filter"]["users"] == surv.size());
  CHECK(report["after_degree_filter"]["links"] == surv_edges);
}

TEST_CASE("diagnose: FMA-present simulated fixture yields present") {
  TempDir tmp;
  const auto sim = tmp.dir("sim");
  REQUIRE(run("simulate --model ba --n 20000 --m 3 --arrival constant --seed 17 --out-dir " +
              sim) == 0);
  const auto out = tmp.dir("diag");
  REQUIRE(run("diagnose" + graph_args(sim) +
              "--cohort-quantiles 5 --lifetime-step-days 500 --min-lifetime-days 4000 "
              "--period-days 1000 --out-dir " + out) == 0);
  auto verdict = read_json(out + "/fma_verdict.json");
  CHECK(verdict["verdict"] == "present");
  CHECK(verdict["dominance_score"].get<double>() >= 0.8);
  CHECK(fs::exists(out + "/cohorts.csv"));
  CHECK(fs::exists(out + "/growth.csv"));
}

TEST_CASE("report bundle re-runs deterministically") {
  TempDir tmp;
  const auto sim = tmp.dir("sim");
  REQUIRE(run("simulate --model ba --n 3000 --m 2 --seed 5 --out-dir " + sim) == 0);
  const auto r1 = tmp.dir("r1"), r2 = tmp.dir("r2");
  const std::string flags =
      "--cohort-quantiles 4 --lifetime-step-days 100 --min-lifetime-days 500 --period-days 200 ";
  REQUIRE(run("report" + graph_args(sim) + flags + "--out-dir " + r1) == 0);
  REQUIRE(run("report" + graph_args(sim) + flags + "--out-dir " + r2) == 0);
  for (const auto& entry : fs::directory_iterator(r1)) {
    const auto name = entry.path().filename().string();
    CAPTURE(name);
    CHECK(fnv1a_file(entry.path().string()) == fnv1a_file(r2 + "/" + name));
  }
  auto bundle = read_json(r1 + "/report.json");
  CHECK(bundle.contains("run_config"));
  CHECK(bundle.contains("input_checksums"));
  CHECK(bundle["artifacts"].size() >= 5);
}

TEST_CASE("ingest writes a manifest with counts and checksums") {
  TempDir tmp;
  const auto sim = tmp.dir("sim");
  REQUIRE(run("simulate --model ba --n 500 --m 1 --seed 2 --out-dir " + sim) == 0);
  const auto out = tmp.dir("out");
  REQUIRE(run("ingest" + graph_args(sim) + "--out-dir " + out) == 0);
  auto manifest = read_json(out + "/manifest.json");
  CHECK(manifest["users"]["records"] == 500);
  CHECK(manifest["users"]["checksum"] == fnv1a_file(sim + "/users.csv"));
  CHECK(manifest["build_report"]["users_kept"] == 500);
}

TEST_CASE("exit codes: usage 1, data 2") {
  CHECK(run("bogus-subcommand") == 1);
  CHECK(run("filter --users /nonexistent.csv --follows /nonexistent2.csv") == 2);
  TempDir tmp;
  CHECK(run("simulate --n 2 --m 5 --out-dir " + tmp.dir("x")) == 1);  // infeasible config
}
