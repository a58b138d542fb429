#include "netlab/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "netlab/errors.hpp"
#include "netlab/parallel.hpp"

namespace netlab {

std::size_t thread_cap() {
  if (const char* env = std::getenv("FMA_NETLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min(thread_cap(), std::max<std::size_t>(n / 4096, 1));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(lo + chunk, n);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

std::string metric_name(Metric m) {
  switch (m) {
    case Metric::InDegree: return "in_degree";
    case Metric::PageRank: return "pagerank";
    case Metric::HitsAuthority: return "hits_authority";
    case Metric::HitsHub: return "hits_hub";
  }
  return "unknown";
}

namespace {

std::vector<UserId> collect_ids(const TemporalGraph& g) {
  std::vector<UserId> ids;
  ids.reserve(g.node_count());
  for (const auto& u : g.users()) ids.push_back(u.id);
  return ids;
}

}  // namespace

CentralityScores in_degree_centrality(const TemporalGraph& g) {
  CentralityScores s;
  s.metric = Metric::InDegree;
  s.ids = collect_ids(g);
  s.values.resize(g.node_count());
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    s.values[u] = static_cast<double>(g.in_degree(u));
  }
  return s;
}

CentralityScores pagerank(const TemporalGraph& g, const PageRankConfig& cfg) {
  const std::size_t n = g.node_count();
  if (n == 0) throw DataError("pagerank: empty graph");

  std::vector<double> rank(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  std::vector<double> contrib(n, 0.0);  // rank[u] / out_degree(u), 0 for dangling

  CentralityScores s;
  s.metric = Metric::PageRank;
  s.ids = collect_ids(g);
  s.converged = false;

  const double d = cfg.damping;
  std::size_t iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    double dangling_mass = 0.0;
    for (std::uint32_t u = 0; u < n; ++u) {
      const std::size_t deg = g.out_degree(u);
      if (deg == 0) {
        dangling_mass += rank[u];
        contrib[u] = 0.0;
      } else {
        contrib[u] = rank[u] / static_cast<double>(deg);
      }
    }
    const double base = (1.0 - d) / static_cast<double>(n) +
                        d * dangling_mass / static_cast<double>(n);
    parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t v = lo; v < hi; ++v) {
        double acc = 0.0;
        for (std::uint32_t u : g.in_neighbors(static_cast<std::uint32_t>(v))) {
          acc += contrib[u];
        }
        next[v] = base + d * acc;
      }
    });

    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!std::isfinite(next[v])) {
        throw NumericError("pagerank: non-finite value at iteration " + std::to_string(iter));
      }
      delta += std::abs(next[v] - rank[v]);
    }
    rank.swap(next);
    if (delta < cfg.tolerance) {
      s.converged = true;
      ++iter;
      break;
    }
  }

  // Renormalize away accumulated rounding so the sum-to-1 contract is exact.
  double total = 0.0;
  for (double v : rank) total += v;
  for (double& v : rank) v /= total;

  s.values = std::move(rank);
  s.iterations = iter;
  return s;
}

std::pair<CentralityScores, CentralityScores> hits(const TemporalGraph& g,
                                                   const HitsConfig& cfg) {
  const std::size_t n = g.node_count();
  if (n == 0) throw DataError("hits: empty graph");
  if (g.edge_count() == 0) throw DataError("hits: graph has no edges, scores undefined");

  std::vector<double> auth(n, 1.0 / static_cast<double>(n));
  std::vector<double> hub(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);

  auto normalize = [&](std::vector<double>& v) {
    double s = 0.0;
    if (cfg.normalization == HitsNorm::L1) {
      for (double x : v) s += x;
    } else {
      for (double x : v) s += x * x;
      s = std::sqrt(s);
    }
    if (s == 0.0 || !std::isfinite(s)) {
      throw NumericError("hits: degenerate normalization");
    }
    for (double& x : v) x /= s;
  };

  bool converged = false;
  std::size_t iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t v = lo; v < hi; ++v) {
        double acc = 0.0;
        for (std::uint32_t u : g.in_neighbors(static_cast<std::uint32_t>(v))) acc += hub[u];
        next[v] = acc;
      }
    });
    normalize(next);
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) delta = std::max(delta, std::abs(next[v] - auth[v]));
    auth.swap(next);

    parallel_chunks(n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t u = lo; u < hi; ++u) {
        double acc = 0.0;
        for (std::uint32_t v : g.out_neighbors(static_cast<std::uint32_t>(u))) acc += auth[v];
        next[u] = acc;
      }
    });
    normalize(next);
    for (std::size_t u = 0; u < n; ++u) delta = std::max(delta, std::abs(next[u] - hub[u]));
    hub.swap(next);

    if (delta < cfg.tolerance) {
      converged = true;
      ++iter;
      break;
    }
  }

  auto ids = collect_ids(g);
  CentralityScores a{Metric::HitsAuthority, ids, std::move(auth), iter, converged};
  CentralityScores h{Metric::HitsHub, std::move(ids), std::move(hub), iter, converged};
  return {std::move(a), std::move(h)};
}

std::vector<std::pair<UserId, double>> top_k(const CentralityScores& scores, std::size_t k) {
  std::vector<std::pair<UserId, double>> all;
  all.reserve(scores.ids.size());
  for (std::size_t i = 0; i < scores.ids.size(); ++i) {
    all.emplace_back(scores.ids[i], scores.values[i]);
  }
  const auto cmp = [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  };
  if (k < all.size()) {
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), cmp);
    all.resize(k);
  } else {
    std::sort(all.begin(), all.end(), cmp);
  }
  return all;
}

}  // namespace netlab
