// fma-netlab: follower-network influence analysis and growth-model toolbench.
//
// Subcommands: ingest, filter, centrality, activity, cohorts, distribution,
// growth, simulate, diagnose, report. All artifacts are written atomically
// (temp file + rename) and are byte-deterministic for a fixed config + input.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "netlab/activity.hpp"
#include "netlab/centrality.hpp"
#include "netlab/errors.hpp"
#include "netlab/graph.hpp"
#include "netlab/ingest.hpp"
#include "netlab/macro.hpp"
#include "netlab/simulate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace netlab;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open '" + tmp + "' for writing");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw DataError("cannot rename '" + tmp + "' to '" + path + "'");
  }
}

void write_json_atomic(const std::string& path, const json& doc) {
  write_text_atomic(path, doc.dump(2) + "\n");
}

struct GraphArgs {
  std::string users_path;
  std::string follows_path;
};

void add_graph_args(CLI::App* cmd, GraphArgs& a) {
  cmd->add_option("--users", a.users_path, "users.csv path")->required();
  cmd->add_option("--follows", a.follows_path, "follows.csv path")->required();
}

TemporalGraph load_graph(const GraphArgs& a, json* load_info = nullptr) {
  LoadReport urep, frep;
  auto users = load_users_csv(a.users_path, &urep);
  auto edges = load_follows_csv(a.follows_path, &frep);
  if (load_info) {
    auto rep_json = [](const LoadReport& r) {
      json errs = json::array();
      for (const auto& e : r.errors) errs.push_back({{"line", e.line}, {"reason", e.reason}});
      return json{{"rows_in", r.rows_in}, {"rows_loaded", r.rows_loaded}, {"errors", errs}};
    };
    (*load_info)["users"] = rep_json(urep);
    (*load_info)["follows"] = rep_json(frep);
  }
  return build_graph(std::move(users), std::move(edges));
}

json build_report_json(const BuildReport& r) {
  return {{"users_in", r.users_in},
          {"edges_in", r.edges_in},
          {"users_kept", r.users_kept},
          {"edges_kept", r.edges_kept},
          {"duplicate_users_dropped", r.duplicate_users_dropped},
          {"self_follows_dropped", r.self_follows_dropped},
          {"duplicate_edges_dropped", r.duplicate_edges_dropped},
          {"unknown_endpoint_dropped", r.unknown_endpoint_dropped},
          {"pre_creation_edges_kept", r.pre_creation_edges_kept}};
}

std::string ensure_out_dir(const std::string& dir) {
  fs::create_directories(dir);
  return dir;
}

std::string out_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::vector<Timestamp> quantile_boundaries(const TemporalGraph& g, std::size_t q) {
  std::vector<Timestamp> joins;
  for (const auto& u : g.users()) joins.push_back(u.created_at);
  std::sort(joins.begin(), joins.end());
  std::vector<Timestamp> bounds;
  for (std::size_t k = 1; k < q; ++k) {
    bounds.push_back(joins[joins.size() * k / q]);
  }
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
  return bounds;
}

void write_ranking_csv(const std::string& path, const TemporalGraph& g,
                       const std::vector<std::pair<UserId, double>>& ranked) {
  std::string csv = "rank,user_id,login,value\n";
  std::size_t rank = 1;
  for (const auto& [id, value] : ranked) {
    csv += std::to_string(rank++) + "," + std::to_string(id) + "," +
           g.user(g.node_of(id)).login + "," + fmt_double(value) + "\n";
  }
  write_text_atomic(path, csv);
}

void write_cohorts_csv(const std::string& path, const CohortCurveSet& curves) {
  std::string csv = "cohort,lifetime_seconds,mean_in_degree\n";
  for (const auto& [label, curve] : curves.cohorts) {
    for (const auto& p : curve) {
      csv += label + "," + std::to_string(p.lifetime) + "," + fmt_double(p.mean_in_degree) + "\n";
    }
  }
  write_text_atomic(path, csv);
}

void write_growth_csv(const std::string& path, const std::vector<GrowthPoint>& curve) {
  std::string csv = "period_end,cumulative_users\n";
  for (const auto& p : curve) {
    csv += format_iso8601_utc(p.time) + "," + std::to_string(p.cumulative_users) + "\n";
  }
  write_text_atomic(path, csv);
}

json regime_json(const GrowthRegime& r) {
  return {{"classification", regime_name(r.classification)},
          {"log_fit_r2", r.log_fit_r2},
          {"concavity_stat", r.concavity_stat}};
}

// --- per-subcommand option bags -------------------------------------------

struct IngestOpts {
  GraphArgs graph;
  std::string activity_path;
  std::string out_dir = ".";
};

struct FilterOpts {
  GraphArgs graph;
  std::size_t min_followers = 5;
  bool keep_orgs = false;
  bool keep_fake = false;
  std::string out_dir = ".";
};

struct CentralityOpts {
  GraphArgs graph;
  std::string metric = "pagerank";
  std::string activity_path;  // required for --metric all
  std::size_t top_k = 10;
  double damping = 0.85;
  double tolerance = 1e-9;
  std::size_t max_iterations = 200;
  std::string hits_norm = "l1";
  std::string out_dir = ".";
};

struct ActivityOpts {
  std::string activity_path;
  std::string metric = "merged_pr";
  std::size_t top_k = 10;
  bool correlate = false;
  GraphArgs graph;  // optional join for follower correlation
  bool has_graph = false;
  std::size_t correlation_top_k = 100;
  std::string out_dir = ".";
};

struct CohortOpts {
  GraphArgs graph;
  std::size_t min_cohort_size = 2;
  std::size_t quantiles = 0;  // 0: year cohorts
  std::int64_t lifetime_step_days = 0;
  std::string out_dir = ".";
};

struct DistributionOpts {
  GraphArgs graph;
  std::string binning = "exact";
  bool fit = false;
  std::string out_dir = ".";
};

struct GrowthOpts {
  GraphArgs graph;
  std::int64_t period_days = 0;  // 0: calendar years
  double concavity_threshold = 0.01;
  std::string out_dir = ".";
};

struct SimulateOpts {
  std::string model = "ba";
  std::size_t n = 1000;
  std::size_t m = 1;
  std::string arrival = "constant";
  std::size_t steps = 0;
  double rate = 0.1;
  double poly_exponent = 2.0;
  std::string fitness_dist = "uniform";
  double fitness_mean = 1.0;
  std::string aging_decay = "power";
  double aging_param = 1.0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

struct DiagnoseOpts {
  GraphArgs graph;
  std::size_t min_cohort_size = 2;
  std::size_t quantiles = 0;
  std::int64_t lifetime_step_days = 0;
  std::int64_t min_lifetime_days = 365;
  std::int64_t period_days = 0;
  double concavity_threshold = 0.01;
  std::string out_dir = ".";
};

struct ReportOpts {
  GraphArgs graph;
  std::string activity_path;
  std::size_t top_k = 10;
  double damping = 0.85;
  DiagnoseOpts diag;
  std::string out_dir = ".";
};

SimConfig to_sim_config(const SimulateOpts& o) {
  SimConfig cfg;
  if (o.model == "ba") cfg.model = SimModel::BarabasiAlbert;
  else if (o.model == "fitness") cfg.model = SimModel::Fitness;
  else if (o.model == "aging") cfg.model = SimModel::Aging;
  else throw ConfigError("unknown model '" + o.model + "'");
  cfg.n_final = o.n;
  cfg.m = o.m;
  if (o.arrival == "constant") cfg.arrival.kind = ArrivalKind::ConstantRate;
  else if (o.arrival == "exponential") cfg.arrival.kind = ArrivalKind::Exponential;
  else if (o.arrival == "polynomial") cfg.arrival.kind = ArrivalKind::Polynomial;
  else throw ConfigError("unknown arrival '" + o.arrival + "'");
  cfg.arrival.steps = o.steps;
  cfg.arrival.rate = o.rate;
  cfg.arrival.exponent = o.poly_exponent;
  cfg.fitness_distribution = o.fitness_dist == "exponential" ? FitnessKind::Exponential
                                                             : FitnessKind::Uniform;
  cfg.fitness_mean = o.fitness_mean;
  cfg.aging_decay = o.aging_decay == "exponential" ? AgingKind::Exponential : AgingKind::Power;
  cfg.aging_param = o.aging_param;
  cfg.seed = o.seed;
  return cfg;
}

json sim_config_json(const SimulateOpts& o) {
  return {{"model", o.model},          {"n", o.n},
          {"m", o.m},                  {"arrival", o.arrival},
          {"steps", o.steps},          {"rate", o.rate},
          {"poly_exponent", o.poly_exponent}, {"fitness_dist", o.fitness_dist},
          {"fitness_mean", o.fitness_mean},   {"aging_decay", o.aging_decay},
          {"aging_param", o.aging_param},     {"seed", o.seed}};
}

// --- command bodies ---------------------------------------------------------

void run_ingest(const IngestOpts& o) {
  ensure_out_dir(o.out_dir);
  json load_info;
  auto g = load_graph(o.graph, &load_info);

  json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["users"] = {{"path", o.graph.users_path},
                       {"records", g.node_count()},
                       {"checksum", fnv1a_file(o.graph.users_path)}};
  manifest["follows"] = {{"path", o.graph.follows_path},
                         {"records", g.edge_count()},
                         {"checksum", fnv1a_file(o.graph.follows_path)}};
  if (!o.activity_path.empty()) {
    LoadReport arep;
    auto recs = load_activity_json(o.activity_path, &arep);
    manifest["activity"] = {{"path", o.activity_path},
                            {"records", recs.size()},
                            {"checksum", fnv1a_file(o.activity_path)}};
    json errs = json::array();
    for (const auto& e : arep.errors) errs.push_back({{"line", e.line}, {"reason", e.reason}});
    load_info["activity"] = {{"rows_in", arep.rows_in},
                             {"rows_loaded", arep.rows_loaded},
                             {"errors", errs}};
  }
  manifest["time_min"] = format_iso8601_utc(g.min_timestamp());
  manifest["time_max"] = format_iso8601_utc(g.max_timestamp());
  manifest["load_reports"] = load_info;
  manifest["build_report"] = build_report_json(g.build_report());
  write_json_atomic(out_path(o.out_dir, "manifest.json"), manifest);
}

void run_filter(const FilterOpts& o) {
  ensure_out_dir(o.out_dir);
  auto g = load_graph(o.graph);
  FilterReport rep;
  auto f = filter_graph(g, o.min_followers, !o.keep_orgs, !o.keep_fake, &rep);

  write_users_csv(out_path(o.out_dir, "filtered_users.csv"), f.users());
  write_follows_csv(out_path(o.out_dir, "filtered_follows.csv"), f.edges());

  json report;
  report["run_config"] = {{"min_followers", o.min_followers},
                          {"drop_orgs", !o.keep_orgs},
                          {"drop_fake", !o.keep_fake}};
  report["original"] = {{"users", rep.users_before}, {"links", rep.edges_before}};
  report["after_flag_filter"] = {{"users", rep.users_after_flags},
                                 {"links", rep.edges_after_flags}};
  report["after_degree_filter"] = {{"users", rep.users_after_degree},
                                   {"links", rep.edges_after_degree}};
  write_json_atomic(out_path(o.out_dir, "filter_report.json"), report);
}

void run_centrality(const CentralityOpts& o) {
  ensure_out_dir(o.out_dir);
  auto g = load_graph(o.graph);
  PageRankConfig pr_cfg{o.damping, o.tolerance, o.max_iterations};
  HitsConfig hits_cfg;
  hits_cfg.normalization = o.hits_norm == "l2" ? HitsNorm::L2 : HitsNorm::L1;

  auto compute = [&](const std::string& name) -> CentralityScores {
    if (name == "in_degree") return in_degree_centrality(g);
    if (name == "pagerank") return pagerank(g, pr_cfg);
    if (name == "hits_authority") return hits(g, hits_cfg).first;
    if (name == "hits_hub") return hits(g, hits_cfg).second;
    throw ConfigError("unknown metric '" + name + "'");
  };

  if (o.metric == "all") {
    // Appendix-style five-column ranking table: PageRank, HITS authority,
    // followers, merged PRs, issues.
    if (o.activity_path.empty()) {
      throw ConfigError("--metric all requires --activity");
    }
    auto recs = load_activity_json(o.activity_path);
    auto pr = top_k(compute("pagerank"), o.top_k);
    auto auth = top_k(compute("hits_authority"), o.top_k);
    auto fol = top_k(compute("in_degree"), o.top_k);
    auto merged = merged_pr_ranking(recs, o.top_k);
    auto issues = issue_ranking(recs, o.top_k);

    auto login = [&](UserId id) { return g.user(g.node_of(id)).login; };
    std::string csv =
        "rank,pagerank_login,pagerank,hits_authority_login,hits_authority,"
        "followers_login,followers,merged_pr_login,merged_pr,issues_login,issues\n";
    const std::size_t rows = o.top_k;
    for (std::size_t i = 0; i < rows; ++i) {
      csv += std::to_string(i + 1) + ",";
      csv += i < pr.size() ? login(pr[i].first) + "," + fmt_double(pr[i].second) : ",";
      csv += ",";
      csv += i < auth.size() ? login(auth[i].first) + "," + fmt_double(auth[i].second) : ",";
      csv += ",";
      csv += i < fol.size() ? login(fol[i].first) + "," + fmt_double(fol[i].second) : ",";
      csv += ",";
      csv += i < merged.size()
                 ? merged[i].login + "," + std::to_string(merged[i].merged_pr_count)
                 : ",";
      csv += ",";
      csv += i < issues.size() ? issues[i].login + "," + std::to_string(issues[i].issue_count)
                               : ",";
      csv += "\n";
    }
    write_text_atomic(out_path(o.out_dir, "ranking_all.csv"), csv);
    return;
  }

  auto scores = compute(o.metric);
  write_ranking_csv(out_path(o.out_dir, "ranking_" + o.metric + ".csv"), g,
                    top_k(scores, o.top_k));
  json meta;
  meta["run_config"] = {{"metric", o.metric},
                        {"top_k", o.top_k},
                        {"damping", o.damping},
                        {"tolerance", o.tolerance},
                        {"max_iterations", o.max_iterations},
                        {"hits_normalization", o.hits_norm}};
  meta["iterations"] = scores.iterations;
  meta["converged"] = scores.converged;
  write_json_atomic(out_path(o.out_dir, "centrality_" + o.metric + ".json"), meta);
}

void run_activity(const ActivityOpts& o) {
  ensure_out_dir(o.out_dir);
  auto recs = load_activity_json(o.activity_path);

  auto ranked = o.metric == "issues" ? issue_ranking(recs, o.top_k)
                                     : merged_pr_ranking(recs, o.top_k);
  std::string csv = "rank,user_id,login,merged_pr_count,submitted_pr_count,issue_count,repo_count\n";
  std::size_t rank = 1;
  for (const auto& r : ranked) {
    csv += std::to_string(rank++) + "," + std::to_string(r.user) + "," + r.login + "," +
           std::to_string(r.merged_pr_count) + "," + std::to_string(r.submitted_pr_count) + "," +
           std::to_string(r.issue_count) + "," + std::to_string(r.repo_count) + "\n";
  }
  write_text_atomic(out_path(o.out_dir, "activity_" + o.metric + ".csv"), csv);

  if (!o.correlate) return;

  std::vector<std::string> labels;
  std::vector<std::vector<double>> columns;
  if (o.has_graph) {
    // Join: users in the PageRank top-k that also have activity records,
    // correlating followers against the activity metrics.
    auto g = load_graph(o.graph);
    auto pr = top_k(pagerank(g), o.correlation_top_k);
    std::vector<ActivityRecord> joined;
    std::vector<double> followers;
    for (const auto& [id, score] : pr) {
      for (const auto& r : recs) {
        if (r.user == id) {
          joined.push_back(r);
          followers.push_back(static_cast<double>(g.in_degree(g.node_of(id))));
          break;
        }
      }
    }
    labels = {"followers", "repos", "merged_pr", "issues"};
    columns = {followers, activity_column(joined, "repos"),
               activity_column(joined, "merged_pr"), activity_column(joined, "issues")};
  } else {
    labels = {"repos", "merged_pr", "issues"};
    columns = {activity_column(recs, "repos"), activity_column(recs, "merged_pr"),
               activity_column(recs, "issues")};
  }
  auto m = pearson_matrix(labels, columns);

  std::string mcsv = "metric";
  for (const auto& l : m.labels) mcsv += "," + l;
  mcsv += "\n";
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    mcsv += m.labels[i];
    for (std::size_t j = 0; j < m.labels.size(); ++j) mcsv += "," + fmt_double(m.rho[i][j]);
    mcsv += "\n";
  }
  write_text_atomic(out_path(o.out_dir, "correlation.csv"), mcsv);

  json mj;
  mj["labels"] = m.labels;
  mj["rho"] = m.rho;
  mj["n_records"] = columns.front().size();
  write_json_atomic(out_path(o.out_dir, "correlation.json"), mj);
}

CohortCurveSet compute_cohorts(const TemporalGraph& g, std::size_t min_cohort_size,
                               std::size_t quantiles, std::int64_t lifetime_step_days) {
  CohortOptions opts;
  opts.min_cohort_size = min_cohort_size;
  if (quantiles >= 2) opts.boundaries = quantile_boundaries(g, quantiles);
  opts.lifetime_step = lifetime_step_days * 86400;
  return cohort_curves(g, opts);
}

void run_cohorts(const CohortOpts& o) {
  ensure_out_dir(o.out_dir);
  auto g = load_graph(o.graph);
  auto curves = compute_cohorts(g, o.min_cohort_size, o.quantiles, o.lifetime_step_days);
  write_cohorts_csv(out_path(o.out_dir, "cohorts.csv"), curves);
}

void run_distribution(const DistributionOpts& o) {
  ensure_out_dir(o.out_dir);
  auto g = load_graph(o.graph);
  auto h = degree_histogram(g, o.binning == "log" ? Binning::Logarithmic : Binning::Exact);
  std::string csv = "degree_lo,degree_hi,user_count\n";
  for (const auto& b : h.bins) {
    csv += std::to_string(b.lo) + "," + std::to_string(b.hi) + "," + std::to_string(b.count) + "\n";
  }
  write_text_atomic(out_path(o.out_dir, "histogram.csv"), csv);

  if (o.fit) {
    auto fit = fit_power_law(g);
    write_json_atomic(out_path(o.out_dir, "power_law_fit.json"),
                      {{"gamma", fit.gamma},
                       {"xmin", fit.xmin},
                       {"ks_distance", fit.ks_distance},
                       {"n_tail", fit.n_tail}});
  }
}

void run_growth(const GrowthOpts& o) {
  ensure_out_dir(o.out_dir);
  auto g = load_graph(o.graph);
  auto curve = growth_curve(g, o.period_days * 86400);
  write_growth_csv(out_path(o.out_dir, "growth.csv"), curve);
  GrowthClassifierConfig cfg{o.concavity_threshold};
  auto regime = classify_growth(curve, cfg);
  write_json_atomic(out_path(o.out_dir, "growth_regime.json"), regime_json(regime));
}

void run_simulate(const SimulateOpts& o) {
  ensure_out_dir(o.out_dir);
  auto cfg = to_sim_config(o);
  auto g = simulate(cfg);
  write_users_csv(out_path(o.out_dir, "users.csv"), g.users());
  write_follows_csv(out_path(o.out_dir, "follows.csv"), g.edges());
  json meta;
  meta["run_config"] = sim_config_json(o);
  meta["tool_version"] = kToolVersion;
  meta["seed_network_size"] = seed_network_size(cfg);
  meta["nodes"] = g.node_count();
  meta["edges"] = g.edge_count();
  write_json_atomic(out_path(o.out_dir, "sim_config.json"), meta);
}

FmaVerdict run_diagnose_impl(const DiagnoseOpts& o, const TemporalGraph& g) {
  auto curves = compute_cohorts(g, o.min_cohort_size, o.quantiles, o.lifetime_step_days);
  write_cohorts_csv(out_path(o.out_dir, "cohorts.csv"), curves);

  auto curve = growth_curve(g, o.period_days * 86400);
  write_growth_csv(out_path(o.out_dir, "growth.csv"), curve);
  GrowthClassifierConfig gcfg{o.concavity_threshold};
  auto regime = classify_growth(curve, gcfg);

  auto verdict = fma_diagnose(curves, regime, o.min_lifetime_days * 86400);
  json vj;
  vj["run_config"] = {{"min_cohort_size", o.min_cohort_size},
                      {"cohort_quantiles", o.quantiles},
                      {"lifetime_step_days", o.lifetime_step_days},
                      {"min_lifetime_days", o.min_lifetime_days},
                      {"period_days", o.period_days},
                      {"concavity_threshold", o.concavity_threshold}};
  vj["verdict"] = verdict_name(verdict.verdict);
  vj["dominance_score"] = verdict.dominance_score;
  vj["regime"] = regime_json(regime);
  vj["min_lifetime_used_seconds"] = verdict.min_lifetime_used;
  write_json_atomic(out_path(o.out_dir, "fma_verdict.json"), vj);
  return verdict;
}

void run_diagnose(const DiagnoseOpts& o) {
  ensure_out_dir(o.out_dir);
  auto g = load_graph(o.graph);
  auto v = run_diagnose_impl(o, g);
  std::printf("fma_verdict=%s dominance_score=%s\n", verdict_name(v.verdict).c_str(),
              fmt_double(v.dominance_score).c_str());
}

void run_report(const ReportOpts& o) {
  ensure_out_dir(o.out_dir);
  auto g = load_graph(o.graph);

  CentralityOpts cent;
  cent.graph = o.graph;
  cent.top_k = o.top_k;
  cent.damping = o.damping;
  cent.out_dir = o.out_dir;
  for (const char* metric : {"in_degree", "pagerank", "hits_authority"}) {
    cent.metric = metric;
    run_centrality(cent);
  }

  DistributionOpts dist;
  dist.graph = o.graph;
  dist.binning = "log";
  dist.fit = true;
  dist.out_dir = o.out_dir;
  run_distribution(dist);

  DiagnoseOpts diag = o.diag;
  diag.graph = o.graph;
  diag.out_dir = o.out_dir;
  run_diagnose_impl(diag, g);

  if (!o.activity_path.empty()) {
    ActivityOpts act;
    act.activity_path = o.activity_path;
    act.top_k = o.top_k;
    act.correlate = true;
    act.graph = o.graph;
    act.has_graph = true;
    act.out_dir = o.out_dir;
    run_activity(act);
  }

  json bundle;
  bundle["tool_version"] = kToolVersion;
  bundle["run_config"] = {
      {"users", o.graph.users_path},
      {"follows", o.graph.follows_path},
      {"activity", o.activity_path},
      {"top_k", o.top_k},
      {"damping", o.damping},
      {"min_cohort_size", o.diag.min_cohort_size},
      {"cohort_quantiles", o.diag.quantiles},
      {"lifetime_step_days", o.diag.lifetime_step_days},
      {"min_lifetime_days", o.diag.min_lifetime_days},
      {"period_days", o.diag.period_days},
      {"concavity_threshold", o.diag.concavity_threshold}};
  bundle["input_checksums"] = {{"users", fnv1a_file(o.graph.users_path)},
                               {"follows", fnv1a_file(o.graph.follows_path)}};
  if (!o.activity_path.empty()) {
    bundle["input_checksums"]["activity"] = fnv1a_file(o.activity_path);
  }
  json artifacts = json::object();
  for (const auto& entry : fs::directory_iterator(o.out_dir)) {
    const auto name = entry.path().filename().string();
    if (name == "report.json" || entry.path().extension() == ".tmp") continue;
    artifacts[name] = fnv1a_file(entry.path().string());
  }
  bundle["artifacts"] = artifacts;
  write_json_atomic(out_path(o.out_dir, "report.json"), bundle);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GitHub-style follower-network influence analysis"};
  app.require_subcommand(1);
  app.set_config("--config");

  IngestOpts ingest_o;
  auto* c_ingest = app.add_subcommand("ingest", "Validate inputs and write a dataset manifest");
  add_graph_args(c_ingest, ingest_o.graph);
  c_ingest->add_option("--activity", ingest_o.activity_path, "activity.json path");
  c_ingest->add_option("--out-dir", ingest_o.out_dir, "output directory");

  FilterOpts filter_o;
  auto* c_filter = app.add_subcommand("filter", "Two-stage account/degree filtering");
  add_graph_args(c_filter, filter_o.graph);
  c_filter->add_option("--min-followers", filter_o.min_followers,
                       "drop users with in-degree <= this (default 5)");
  c_filter->add_flag("--keep-orgs", filter_o.keep_orgs, "keep organization accounts");
  c_filter->add_flag("--keep-fake", filter_o.keep_fake, "keep fake/deleted accounts");
  c_filter->add_option("--out-dir", filter_o.out_dir, "output directory");

  CentralityOpts cent_o;
  auto* c_cent = app.add_subcommand("centrality", "Influence ranking by a centrality metric");
  add_graph_args(c_cent, cent_o.graph);
  c_cent->add_option("--metric", cent_o.metric,
                     "in_degree|pagerank|hits_authority|hits_hub|all");
  c_cent->add_option("--activity", cent_o.activity_path, "activity.json (for --metric all)");
  c_cent->add_option("--top-k", cent_o.top_k, "ranking length (default 10)");
  c_cent->add_option("--damping", cent_o.damping, "PageRank damping (default 0.85)");
  c_cent->add_option("--tolerance", cent_o.tolerance, "convergence tolerance");
  c_cent->add_option("--max-iterations", cent_o.max_iterations, "iteration cap");
  c_cent->add_option("--hits-norm", cent_o.hits_norm, "l1|l2 (default l1)");
  c_cent->add_option("--out-dir", cent_o.out_dir, "output directory");

  ActivityOpts act_o;
  auto* c_act = app.add_subcommand("activity", "Activity rankings and metric correlation");
  c_act->add_option("--activity", act_o.activity_path, "activity.json path")->required();
  c_act->add_option("--metric", act_o.metric, "merged_pr|issues");
  c_act->add_option("--top-k", act_o.top_k, "ranking length (default 10)");
  c_act->add_flag("--correlate", act_o.correlate, "emit Pearson correlation matrix");
  auto* au = c_act->add_option("--users", act_o.graph.users_path, "users.csv (for followers column)");
  auto* af = c_act->add_option("--follows", act_o.graph.follows_path, "follows.csv");
  af->needs(au);
  au->needs(af);
  c_act->add_option("--correlation-top-k", act_o.correlation_top_k,
                    "PageRank top-k join size (default 100)");
  c_act->add_option("--out-dir", act_o.out_dir, "output directory");

  CohortOpts coh_o;
  auto* c_coh = app.add_subcommand("cohorts", "Average in-degree growth per join cohort");
  add_graph_args(c_coh, coh_o.graph);
  c_coh->add_option("--min-cohort-size", coh_o.min_cohort_size, "minimum cohort population");
  c_coh->add_option("--cohort-quantiles", coh_o.quantiles,
                    "split cohorts by join-time quantiles instead of years");
  c_coh->add_option("--lifetime-step-days", coh_o.lifetime_step_days,
                    "lifetime sampling step (0 = auto)");
  c_coh->add_option("--out-dir", coh_o.out_dir, "output directory");

  DistributionOpts dist_o;
  auto* c_dist = app.add_subcommand("distribution", "In-degree histogram and power-law fit");
  add_graph_args(c_dist, dist_o.graph);
  c_dist->add_option("--binning", dist_o.binning, "exact|log");
  c_dist->add_flag("--fit", dist_o.fit, "also fit a discrete power law");
  c_dist->add_option("--out-dir", dist_o.out_dir, "output directory");

  GrowthOpts grow_o;
  auto* c_grow = app.add_subcommand("growth", "Cumulative user growth and regime");
  add_graph_args(c_grow, grow_o.graph);
  c_grow->add_option("--period-days", grow_o.period_days, "period length (0 = calendar years)");
  c_grow->add_option("--concavity-threshold", grow_o.concavity_threshold,
                     "regime threshold tau (default 0.01)");
  c_grow->add_option("--out-dir", grow_o.out_dir, "output directory");

  SimulateOpts sim_o;
  auto* c_sim = app.add_subcommand("simulate", "Generate a synthetic follower network");
  c_sim->add_option("--model", sim_o.model, "ba|fitness|aging");
  c_sim->add_option("--n", sim_o.n, "final node count")->required();
  c_sim->add_option("--m", sim_o.m, "follow edges per arriving node");
  c_sim->add_option("--arrival", sim_o.arrival, "constant|exponential|polynomial");
  c_sim->add_option("--steps", sim_o.steps, "arrival steps (0 = one node per step)");
  c_sim->add_option("--rate", sim_o.rate, "exponential arrival rate");
  c_sim->add_option("--poly-exponent", sim_o.poly_exponent, "polynomial arrival exponent");
  c_sim->add_option("--fitness-dist", sim_o.fitness_dist, "uniform|exponential");
  c_sim->add_option("--fitness-mean", sim_o.fitness_mean, "mean for exponential fitness");
  c_sim->add_option("--aging-decay", sim_o.aging_decay, "power|exponential");
  c_sim->add_option("--aging-param", sim_o.aging_param, "decay parameter");
  c_sim->add_option("--seed", sim_o.seed, "RNG seed");
  c_sim->add_option("--out-dir", sim_o.out_dir, "output directory");

  DiagnoseOpts diag_o;
  auto* c_diag = app.add_subcommand("diagnose", "First-mover-advantage verdict with evidence");
  add_graph_args(c_diag, diag_o.graph);
  c_diag->add_option("--min-cohort-size", diag_o.min_cohort_size, "minimum cohort population");
  c_diag->add_option("--cohort-quantiles", diag_o.quantiles, "quantile cohorts (0 = years)");
  c_diag->add_option("--lifetime-step-days", diag_o.lifetime_step_days, "lifetime step (0 = auto)");
  c_diag->add_option("--min-lifetime-days", diag_o.min_lifetime_days,
                     "minimum shared lifetime (default 365)");
  c_diag->add_option("--period-days", diag_o.period_days, "growth period (0 = years)");
  c_diag->add_option("--concavity-threshold", diag_o.concavity_threshold, "regime threshold");
  c_diag->add_option("--out-dir", diag_o.out_dir, "output directory");

  ReportOpts rep_o;
  auto* c_rep = app.add_subcommand("report", "Aggregate analysis bundle");
  add_graph_args(c_rep, rep_o.graph);
  c_rep->add_option("--activity", rep_o.activity_path, "activity.json path");
  c_rep->add_option("--top-k", rep_o.top_k, "ranking length");
  c_rep->add_option("--damping", rep_o.damping, "PageRank damping");
  c_rep->add_option("--min-cohort-size", rep_o.diag.min_cohort_size, "minimum cohort population");
  c_rep->add_option("--cohort-quantiles", rep_o.diag.quantiles, "quantile cohorts (0 = years)");
  c_rep->add_option("--lifetime-step-days", rep_o.diag.lifetime_step_days, "lifetime step");
  c_rep->add_option("--min-lifetime-days", rep_o.diag.min_lifetime_days, "minimum shared lifetime");
  c_rep->add_option("--period-days", rep_o.diag.period_days, "growth period (0 = years)");
  c_rep->add_option("--concavity-threshold", rep_o.diag.concavity_threshold, "regime threshold");
  c_rep->add_option("--out-dir", rep_o.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (c_ingest->parsed()) run_ingest(ingest_o);
    if (c_filter->parsed()) run_filter(filter_o);
    if (c_cent->parsed()) run_centrality(cent_o);
    if (c_act->parsed()) {
      act_o.has_graph = !act_o.graph.users_path.empty();
      run_activity(act_o);
    }
    if (c_coh->parsed()) run_cohorts(coh_o);
    if (c_dist->parsed()) run_distribution(dist_o);
    if (c_grow->parsed()) run_growth(grow_o);
    if (c_sim->parsed()) run_simulate(sim_o);
    if (c_diag->parsed()) run_diagnose(diag_o);
    if (c_rep->parsed()) run_report(rep_o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
