#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netlab/graph.hpp"

namespace netlab {

enum class Metric { InDegree, PageRank, HitsAuthority, HitsHub };

std::string metric_name(Metric m);

// Per-user scores for one metric, aligned with the graph's dense node order.
// Immutable once returned.
struct CentralityScores {
  Metric metric = Metric::InDegree;
  std::vector<UserId> ids;     // graph user ids, ascending
  std::vector<double> values;  // parallel to ids
  std::size_t iterations = 0;
  bool converged = true;
};

struct PageRankConfig {
  double damping = 0.85;
  double tolerance = 1e-9;  // L1 change per iteration
  std::size_t max_iterations = 200;
};

enum class HitsNorm { L1, L2 };

struct HitsConfig {
  double tolerance = 1e-12;  // max per-node change
  std::size_t max_iterations = 200;
  HitsNorm normalization = HitsNorm::L1;
};

// values[u] = number of distinct followers of u.
CentralityScores in_degree_centrality(const TemporalGraph& g);

// Power iteration where a follow edge u->v donates rank from u to v.
// Dangling nodes (out-degree 0) redistribute their mass uniformly.
// Output sums to 1. Throws NumericError on non-finite intermediates.
CentralityScores pagerank(const TemporalGraph& g, const PageRankConfig& cfg = {});

// authority(v) <- sum of hub over followers; hub(u) <- sum of authority over
// followees; renormalized after each half-step. Requires >= 1 edge.
std::pair<CentralityScores, CentralityScores> hits(const TemporalGraph& g,
                                                   const HitsConfig& cfg = {});

// k highest values, descending, ties broken by ascending UserId.
// k beyond the population returns everyone.
std::vector<std::pair<UserId, double>> top_k(const CentralityScores& scores, std::size_t k);

}  // namespace netlab
