#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace netlab {

using UserId = std::uint64_t;
using Timestamp = std::int64_t;  // UTC seconds

enum class UserKind { Individual, Organization };

struct UserRecord {
  UserId id = 0;
  std::string login;
  Timestamp created_at = 0;
  UserKind kind = UserKind::Individual;
  bool fake = false;
  bool deleted = false;
};

struct FollowEdge {
  UserId follower = 0;
  UserId followee = 0;
  Timestamp created_at = 0;
};

// What build_graph dropped or flagged, by reason. Nothing disappears silently.
struct BuildReport {
  std::size_t users_in = 0;
  std::size_t edges_in = 0;
  std::size_t users_kept = 0;
  std::size_t edges_kept = 0;
  std::size_t duplicate_users_dropped = 0;
  std::size_t self_follows_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
  std::size_t unknown_endpoint_dropped = 0;
  // Edge timestamp precedes an endpoint's account creation. Kept, but counted:
  // dump-style data contains these anomalies and dropping them would skew counts.
  std::size_t pre_creation_edges_kept = 0;
};

// Immutable directed follower network with timestamps on nodes and edges.
// Users are held sorted by id; adjacency is CSR over dense node indices.
// Construction is single-writer; a built graph is safe for concurrent reads.
class TemporalGraph {
 public:
  static constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

  TemporalGraph() = default;

  std::size_t node_count() const { return users_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }

  const std::vector<UserRecord>& users() const { return users_; }
  const UserRecord& user(std::uint32_t node) const { return users_[node]; }

  // Dense node index for an external id, or kNoNode.
  std::uint32_t node_of(UserId id) const {
    auto it = index_.find(id);
    return it == index_.end() ? kNoNode : it->second;
  }

  std::size_t out_degree(std::uint32_t node) const {
    return out_offsets_[node + 1] - out_offsets_[node];
  }
  std::size_t in_degree(std::uint32_t node) const {
    return in_offsets_[node + 1] - in_offsets_[node];
  }

  // Followees of `node`, parallel to out_times().
  std::span<const std::uint32_t> out_neighbors(std::uint32_t node) const {
    return {out_targets_.data() + out_offsets_[node],
            out_targets_.data() + out_offsets_[node + 1]};
  }
  std::span<const Timestamp> out_times(std::uint32_t node) const {
    return {out_edge_times_.data() + out_offsets_[node],
            out_edge_times_.data() + out_offsets_[node + 1]};
  }
  // Followers of `node`; in_times are sorted ascending per node.
  std::span<const std::uint32_t> in_neighbors(std::uint32_t node) const {
    return {in_sources_.data() + in_offsets_[node],
            in_sources_.data() + in_offsets_[node + 1]};
  }
  std::span<const Timestamp> in_times(std::uint32_t node) const {
    return {in_edge_times_.data() + in_offsets_[node],
            in_edge_times_.data() + in_offsets_[node + 1]};
  }

  Timestamp min_timestamp() const { return min_ts_; }
  Timestamp max_timestamp() const { return max_ts_; }

  // Edge list in deterministic (follower id, followee id) order.
  std::vector<FollowEdge> edges() const;

  const BuildReport& build_report() const { return report_; }

 private:
  friend TemporalGraph build_graph(std::vector<UserRecord>, std::vector<FollowEdge>);

  std::vector<UserRecord> users_;  // sorted by id
  std::unordered_map<UserId, std::uint32_t> index_;

  std::vector<std::size_t> out_offsets_, in_offsets_;
  std::vector<std::uint32_t> out_targets_, in_sources_;
  std::vector<Timestamp> out_edge_times_, in_edge_times_;

  Timestamp min_ts_ = 0;
  Timestamp max_ts_ = 0;
  BuildReport report_;
};

// Deterministic: the same input multiset yields an identical graph regardless
// of input order. Duplicate (follower, followee) pairs collapse to the earliest
// timestamp; self-follows and edges naming unknown users are dropped and counted.
TemporalGraph build_graph(std::vector<UserRecord> users, std::vector<FollowEdge> edges);

struct FilterReport {
  std::size_t users_before = 0;
  std::size_t edges_before = 0;
  std::size_t users_after_flags = 0;
  std::size_t edges_after_flags = 0;
  std::size_t users_after_degree = 0;
  std::size_t edges_after_degree = 0;
};

// Two-stage, single-pass filter: drop flagged users (fake/deleted/org) first,
// then drop users whose in-degree in the flag-filtered graph is <= min_followers.
// Not iterated to a fixed point.
TemporalGraph filter_graph(const TemporalGraph& g, std::size_t min_followers,
                           bool drop_orgs, bool drop_fake,
                           FilterReport* report = nullptr);

struct Snapshot {
  Timestamp as_of = 0;
  TemporalGraph graph;
};

// Restriction to users and edges with created_at <= t. Monotone in t.
Snapshot snapshot_at(const TemporalGraph& g, Timestamp t);

}  // namespace netlab
