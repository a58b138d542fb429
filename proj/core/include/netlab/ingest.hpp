#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netlab/activity.hpp"
#include "netlab/graph.hpp"

namespace netlab {

// One rejected input row. Loaders are all-or-report: every input row is
// either loaded or listed here, never silently dropped.
struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;
};

struct LoadReport {
  std::size_t rows_in = 0;
  std::size_t rows_loaded = 0;
  std::vector<RowError> errors;
};

// ISO-8601 UTC ("2008-01-15T10:00:00Z") <-> epoch seconds.
Timestamp parse_iso8601_utc(const std::string& s);
std::string format_iso8601_utc(Timestamp t);

// users.csv: id,login,created_at,type,fake,deleted
std::vector<UserRecord> load_users_csv(const std::string& path, LoadReport* report = nullptr);

// follows.csv: follower_id,followee_id,created_at
std::vector<FollowEdge> load_follows_csv(const std::string& path, LoadReport* report = nullptr);

// activity.json: array of {"user_id", "login", "merged_pr_count",
// "submitted_pr_count", "issue_count", "repo_count"}. Records violating
// merged <= submitted are rejected into the report.
std::vector<ActivityRecord> load_activity_json(const std::string& path,
                                               LoadReport* report = nullptr);

// Byte-deterministic emitters (records sorted by id).
void write_users_csv(const std::string& path, std::vector<UserRecord> users);
void write_follows_csv(const std::string& path, std::vector<FollowEdge> edges);
void write_activity_json(const std::string& path, std::vector<ActivityRecord> records);

struct FileStat {
  std::string path;
  std::size_t records = 0;
  std::uint64_t checksum = 0;  // FNV-1a 64 over the file bytes
};

struct DatasetManifest {
  FileStat users;
  FileStat follows;
  FileStat activity;  // optional: empty path when absent
  Timestamp time_min = 0;
  Timestamp time_max = 0;
};

std::uint64_t fnv1a_file(const std::string& path);

struct FetchPlan {
  std::size_t total_requests = 0;
  std::size_t limit_per_window = 5000;
  std::int64_t window_seconds = 3600;
  std::vector<std::pair<std::size_t, std::size_t>> schedule;  // (window index, requests)
};

// Greedy fill: ceil(total/limit) windows, all but the last at the full limit.
FetchPlan plan_fetch(std::size_t total_requests, std::size_t limit_per_window = 5000,
                     std::int64_t window_seconds = 3600);

}  // namespace netlab
