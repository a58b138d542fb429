#include "netlab/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "netlab/errors.hpp"

namespace netlab {

namespace {

// Civil-calendar day arithmetic (Howard Hinnant), no libc TZ involvement.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  if (s.empty()) return false;
  out = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    out = out * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return true;
}

void require_header(std::ifstream& in, const std::string& expected, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(path + ": empty file, expected header '" + expected + "'");
  }
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != expected) {
    throw DataError(path + ": bad header '" + line + "', expected '" + expected + "'");
  }
}

// Atomic write: temp file in place, then rename.
class AtomicFile {
 public:
  explicit AtomicFile(const std::string& path) : path_(path), tmp_(path + ".tmp") {
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw DataError("cannot open '" + tmp_ + "' for writing");
  }
  std::ofstream& stream() { return out_; }
  void commit() {
    out_.close();
    if (std::rename(tmp_.c_str(), path_.c_str()) != 0) {
      throw DataError("cannot rename '" + tmp_ + "' to '" + path_ + "'");
    }
  }

 private:
  std::string path_, tmp_;
  std::ofstream out_;
};

}  // namespace

Timestamp parse_iso8601_utc(const std::string& s) {
  int y;
  unsigned mo, d, h, mi, se;
  char z = 0;
  if (std::sscanf(s.c_str(), "%d-%2u-%2uT%2u:%2u:%2u%c", &y, &mo, &d, &h, &mi, &se, &z) != 7 ||
      z != 'Z' || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) {
    throw DataError("bad ISO-8601 UTC timestamp '" + s + "'");
  }
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

std::string format_iso8601_utc(Timestamp t) {
  std::int64_t day = t / 86400;
  std::int64_t sec = t % 86400;
  if (sec < 0) {
    sec += 86400;
    --day;
  }
  int y;
  unsigned mo, d;
  civil_from_days(day, y, mo, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", y, mo, d,
                static_cast<long long>(sec / 3600), static_cast<long long>(sec / 60 % 60),
                static_cast<long long>(sec % 60));
  return buf;
}

std::vector<UserRecord> load_users_csv(const std::string& path, LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  require_header(in, "id,login,created_at,type,fake,deleted", path);

  LoadReport rep;
  std::vector<UserRecord> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    ++rep.rows_in;
    const auto f = split_csv_line(line);
    auto reject = [&](const std::string& why) { rep.errors.push_back({lineno, why}); };
    if (f.size() != 6) {
      reject("expected 6 fields, got " + std::to_string(f.size()));
      continue;
    }
    UserRecord r;
    if (!parse_u64(f[0], r.id)) {
      reject("bad id '" + f[0] + "'");
      continue;
    }
    if (f[1].empty()) {
      reject("empty login");
      continue;
    }
    r.login = f[1];
    try {
      r.created_at = parse_iso8601_utc(f[2]);
    } catch (const DataError&) {
      reject("bad created_at '" + f[2] + "'");
      continue;
    }
    if (f[3] == "USR") {
      r.kind = UserKind::Individual;
    } else if (f[3] == "ORG") {
      r.kind = UserKind::Organization;
    } else {
      reject("bad type '" + f[3] + "'");
      continue;
    }
    if (f[4] != "0" && f[4] != "1") {
      reject("bad fake flag '" + f[4] + "'");
      continue;
    }
    if (f[5] != "0" && f[5] != "1") {
      reject("bad deleted flag '" + f[5] + "'");
      continue;
    }
    r.fake = f[4] == "1";
    r.deleted = f[5] == "1";
    out.push_back(std::move(r));
  }
  rep.rows_loaded = out.size();
  if (report) *report = std::move(rep);
  return out;
}

std::vector<FollowEdge> load_follows_csv(const std::string& path, LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  require_header(in, "follower_id,followee_id,created_at", path);

  LoadReport rep;
  std::vector<FollowEdge> out;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    ++rep.rows_in;
    const auto f = split_csv_line(line);
    auto reject = [&](const std::string& why) { rep.errors.push_back({lineno, why}); };
    if (f.size() != 3) {
      reject("expected 3 fields, got " + std::to_string(f.size()));
      continue;
    }
    FollowEdge e;
    if (!parse_u64(f[0], e.follower) || !parse_u64(f[1], e.followee)) {
      reject("bad user id");
      continue;
    }
    try {
      e.created_at = parse_iso8601_utc(f[2]);
    } catch (const DataError&) {
      reject("bad created_at '" + f[2] + "'");
      continue;
    }
    out.push_back(e);
  }
  rep.rows_loaded = out.size();
  if (report) *report = std::move(rep);
  return out;
}

std::vector<ActivityRecord> load_activity_json(const std::string& path, LoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": malformed JSON: " + e.what());
  }
  if (!doc.is_array()) throw DataError(path + ": expected a JSON array");

  LoadReport rep;
  std::vector<ActivityRecord> out;
  std::size_t idx = 0;
  for (const auto& item : doc) {
    ++idx;
    ++rep.rows_in;
    auto reject = [&](const std::string& why) { rep.errors.push_back({idx, why}); };
    try {
      ActivityRecord r;
      r.user = item.at("user_id").get<std::uint64_t>();
      r.login = item.at("login").get<std::string>();
      r.merged_pr_count = item.at("merged_pr_count").get<std::uint64_t>();
      r.submitted_pr_count = item.at("submitted_pr_count").get<std::uint64_t>();
      r.issue_count = item.at("issue_count").get<std::uint64_t>();
      r.repo_count = item.at("repo_count").get<std::uint64_t>();
      if (r.merged_pr_count > r.submitted_pr_count) {
        reject("merged_pr_count exceeds submitted_pr_count");
        continue;
      }
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      reject(e.what());
    }
  }
  rep.rows_loaded = out.size();
  if (report) *report = std::move(rep);
  return out;
}

void write_users_csv(const std::string& path, std::vector<UserRecord> users) {
  std::sort(users.begin(), users.end(),
            [](const UserRecord& a, const UserRecord& b) { return a.id < b.id; });
  AtomicFile f(path);
  auto& o = f.stream();
  o << "id,login,created_at,type,fake,deleted\n";
  for (const auto& u : users) {
    o << u.id << ',' << u.login << ',' << format_iso8601_utc(u.created_at) << ','
      << (u.kind == UserKind::Organization ? "ORG" : "USR") << ',' << (u.fake ? 1 : 0) << ','
      << (u.deleted ? 1 : 0) << '\n';
  }
  f.commit();
}

void write_follows_csv(const std::string& path, std::vector<FollowEdge> edges) {
  std::sort(edges.begin(), edges.end(), [](const FollowEdge& a, const FollowEdge& b) {
    if (a.follower != b.follower) return a.follower < b.follower;
    if (a.followee != b.followee) return a.followee < b.followee;
    return a.created_at < b.created_at;
  });
  AtomicFile f(path);
  auto& o = f.stream();
  o << "follower_id,followee_id,created_at\n";
  for (const auto& e : edges) {
    o << e.follower << ',' << e.followee << ',' << format_iso8601_utc(e.created_at) << '\n';
  }
  f.commit();
}

void write_activity_json(const std::string& path, std::vector<ActivityRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const ActivityRecord& a, const ActivityRecord& b) { return a.user < b.user; });
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) {
    arr.push_back({{"user_id", r.user},
                   {"login", r.login},
                   {"merged_pr_count", r.merged_pr_count},
                   {"submitted_pr_count", r.submitted_pr_count},
                   {"issue_count", r.issue_count},
                   {"repo_count", r.repo_count}});
  }
  AtomicFile f(path);
  f.stream() << arr.dump(2) << '\n';
  f.commit();
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::uint64_t h = 14695981039346656037ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  return h;
}

FetchPlan plan_fetch(std::size_t total_requests, std::size_t limit_per_window,
                     std::int64_t window_seconds) {
  if (limit_per_window < 1) throw ConfigError("plan_fetch: limit_per_window must be >= 1");
  FetchPlan plan;
  plan.total_requests = total_requests;
  plan.limit_per_window = limit_per_window;
  plan.window_seconds = window_seconds;
  std::size_t remaining = total_requests;
  std::size_t window = 0;
  while (remaining > 0) {
    const std::size_t take = std::min(remaining, limit_per_window);
    plan.schedule.emplace_back(window++, take);
    remaining -= take;
  }
  return plan;
}

}  // namespace netlab
