#include "netlab/graph.hpp"

#include <algorithm>
#include <tuple>

namespace netlab {

std::vector<FollowEdge> TemporalGraph::edges() const {
  std::vector<FollowEdge> out;
  out.reserve(edge_count());
  for (std::uint32_t u = 0; u < users_.size(); ++u) {
    const auto nbrs = out_neighbors(u);
    const auto times = out_times(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      out.push_back({users_[u].id, users_[nbrs[i]].id, times[i]});
    }
  }
  return out;
}

TemporalGraph build_graph(std::vector<UserRecord> users, std::vector<FollowEdge> edges) {
  TemporalGraph g;
  g.report_.users_in = users.size();
  g.report_.edges_in = edges.size();

  // Users: sort by id, drop duplicate ids (first kept after sort; a duplicate
  // id with different fields keeps the lexicographically-least record so the
  // result is order independent).
  std::sort(users.begin(), users.end(), [](const UserRecord& a, const UserRecord& b) {
    return std::tie(a.id, a.created_at, a.login) < std::tie(b.id, b.created_at, b.login);
  });
  std::vector<UserRecord> kept;
  kept.reserve(users.size());
  for (auto& u : users) {
    if (!kept.empty() && kept.back().id == u.id) {
      ++g.report_.duplicate_users_dropped;
      continue;
    }
    kept.push_back(std::move(u));
  }
  g.users_ = std::move(kept);
  g.index_.reserve(g.users_.size());
  for (std::uint32_t i = 0; i < g.users_.size(); ++i) {
    g.index_.emplace(g.users_[i].id, i);
  }

  // Edges: resolve endpoints, drop self-follows and unknown ids, collapse
  // duplicate (follower, followee) pairs to the earliest timestamp.
  struct InternalEdge {
    std::uint32_t src, dst;
    Timestamp t;
  };
  std::vector<InternalEdge> es;
  es.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.follower == e.followee) {
      ++g.report_.self_follows_dropped;
      continue;
    }
    const std::uint32_t s = g.node_of(e.follower);
    const std::uint32_t d = g.node_of(e.followee);
    if (s == TemporalGraph::kNoNode || d == TemporalGraph::kNoNode) {
      ++g.report_.unknown_endpoint_dropped;
      continue;
    }
    es.push_back({s, d, e.created_at});
  }
  std::sort(es.begin(), es.end(), [](const InternalEdge& a, const InternalEdge& b) {
    return std::tie(a.src, a.dst, a.t) < std::tie(b.src, b.dst, b.t);
  });
  std::size_t n_unique = 0;
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (n_unique > 0 && es[n_unique - 1].src == es[i].src && es[n_unique - 1].dst == es[i].dst) {
      ++g.report_.duplicate_edges_dropped;  // later timestamp of a dup pair
      continue;
    }
    es[n_unique++] = es[i];
  }
  es.resize(n_unique);

  const std::size_t n = g.users_.size();
  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const auto& e : es) {
    ++g.out_offsets_[e.src + 1];
    ++g.in_offsets_[e.dst + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }
  g.out_targets_.resize(es.size());
  g.out_edge_times_.resize(es.size());
  g.in_sources_.resize(es.size());
  g.in_edge_times_.resize(es.size());

  // es is sorted by (src, dst), so out-CSR fills in order.
  {
    std::vector<std::size_t> cur(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
    for (const auto& e : es) {
      const std::size_t pos = cur[e.src]++;
      g.out_targets_[pos] = e.dst;
      g.out_edge_times_[pos] = e.t;
    }
  }
  // In-CSR: fill grouped by dst. Sort in-slots by (t, src) so in_times are
  // ascending per node, with a deterministic tie order.
  {
    std::vector<std::size_t> cur(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (const auto& e : es) {
      const std::size_t pos = cur[e.dst]++;
      g.in_sources_[pos] = e.src;
      g.in_edge_times_[pos] = e.t;
    }
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t lo = g.in_offsets_[v], hi = g.in_offsets_[v + 1];
      std::vector<std::size_t> order(hi - lo);
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = lo + i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(g.in_edge_times_[a], g.in_sources_[a]) <
               std::tie(g.in_edge_times_[b], g.in_sources_[b]);
      });
      std::vector<std::uint32_t> srcs(order.size());
      std::vector<Timestamp> ts(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        srcs[i] = g.in_sources_[order[i]];
        ts[i] = g.in_edge_times_[order[i]];
      }
      std::copy(srcs.begin(), srcs.end(), g.in_sources_.begin() + lo);
      std::copy(ts.begin(), ts.end(), g.in_edge_times_.begin() + lo);
    }
  }

  // Timestamp range and pre-creation anomalies.
  bool first = true;
  for (const auto& u : g.users_) {
    if (first || u.created_at < g.min_ts_) g.min_ts_ = u.created_at;
    if (first || u.created_at > g.max_ts_) g.max_ts_ = u.created_at;
    first = false;
  }
  for (const auto& e : es) {
    if (e.t < g.min_ts_ && !first) g.min_ts_ = e.t;
    if (e.t > g.max_ts_ && !first) g.max_ts_ = e.t;
    if (e.t < g.users_[e.src].created_at || e.t < g.users_[e.dst].created_at) {
      ++g.report_.pre_creation_edges_kept;
    }
  }

  g.report_.users_kept = g.users_.size();
  g.report_.edges_kept = es.size();
  return g;
}

TemporalGraph filter_graph(const TemporalGraph& g, std::size_t min_followers,
                           bool drop_orgs, bool drop_fake, FilterReport* report) {
  FilterReport rep;
  rep.users_before = g.node_count();
  rep.edges_before = g.edge_count();

  const std::size_t n = g.node_count();
  std::vector<char> alive(n, 1);
  for (std::uint32_t u = 0; u < n; ++u) {
    const auto& r = g.user(u);
    if (drop_orgs && r.kind == UserKind::Organization) alive[u] = 0;
    if (drop_fake && (r.fake || r.deleted)) alive[u] = 0;
  }

  // In-degree restricted to the flag-filtered subgraph.
  std::vector<std::size_t> indeg(n, 0);
  std::size_t edges_after_flags = 0;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!alive[u]) continue;
    for (std::uint32_t v : g.out_neighbors(u)) {
      if (alive[v]) {
        ++indeg[v];
        ++edges_after_flags;
      }
    }
  }
  rep.users_after_flags = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
  rep.edges_after_flags = edges_after_flags;

  // Degree stage uses the flag-stage degrees; a single pass, no fixed point.
  std::vector<char> survive(alive);
  for (std::uint32_t u = 0; u < n; ++u) {
    if (alive[u] && indeg[u] <= min_followers) survive[u] = 0;
  }

  std::vector<UserRecord> users;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (survive[u]) users.push_back(g.user(u));
  }
  std::vector<FollowEdge> edges;
  for (std::uint32_t u = 0; u < n; ++u) {
    if (!survive[u]) continue;
    const auto nbrs = g.out_neighbors(u);
    const auto times = g.out_times(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (survive[nbrs[i]]) {
        edges.push_back({g.user(u).id, g.user(nbrs[i]).id, times[i]});
      }
    }
  }
  TemporalGraph out = build_graph(std::move(users), std::move(edges));
  rep.users_after_degree = out.node_count();
  rep.edges_after_degree = out.edge_count();
  if (report) *report = rep;
  return out;
}

Snapshot snapshot_at(const TemporalGraph& g, Timestamp t) {
  std::vector<UserRecord> users;
  for (const auto& u : g.users()) {
    if (u.created_at <= t) users.push_back(u);
  }
  std::vector<FollowEdge> edges;
  for (std::uint32_t u = 0; u < g.node_count(); ++u) {
    if (g.user(u).created_at > t) continue;
    const auto nbrs = g.out_neighbors(u);
    const auto times = g.out_times(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (times[i] <= t && g.user(nbrs[i]).created_at <= t) {
        edges.push_back({g.user(u).id, g.user(nbrs[i]).id, times[i]});
      }
    }
  }
  return Snapshot{t, build_graph(std::move(users), std::move(edges))};
}

}  // namespace netlab
