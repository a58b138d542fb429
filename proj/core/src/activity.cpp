#include "netlab/activity.hpp"

#include <algorithm>
#include <cmath>

#include "netlab/errors.hpp"

namespace netlab {

namespace {

template <typename Key>
std::vector<ActivityRecord> rank_by(std::vector<ActivityRecord> records, std::size_t k,
                                    Key key) {
  std::sort(records.begin(), records.end(),
            [&](const ActivityRecord& a, const ActivityRecord& b) {
              if (key(a) != key(b)) return key(a) > key(b);
              return a.user < b.user;
            });
  if (k < records.size()) records.resize(k);
  return records;
}

}  // namespace

std::vector<ActivityRecord> merged_pr_ranking(std::vector<ActivityRecord> records,
                                              std::size_t k) {
  return rank_by(std::move(records), k,
                 [](const ActivityRecord& r) { return r.merged_pr_count; });
}

std::vector<ActivityRecord> issue_ranking(std::vector<ActivityRecord> records, std::size_t k) {
  return rank_by(std::move(records), k,
                 [](const ActivityRecord& r) { return r.issue_count; });
}

double merge_ratio(const ActivityRecord& r) {
  if (r.submitted_pr_count == 0) {
    throw NumericError("merge_ratio: undefined for zero submitted pull requests (user " +
                       std::to_string(r.user) + ")");
  }
  return static_cast<double>(r.merged_pr_count) / static_cast<double>(r.submitted_pr_count);
}

CorrelationMatrix pearson_matrix(const std::vector<std::string>& labels,
                                 const std::vector<std::vector<double>>& columns) {
  if (labels.size() != columns.size()) {
    throw DataError("pearson_matrix: label/column count mismatch");
  }
  if (columns.empty() || columns.front().size() < 2) {
    throw DataError("pearson_matrix: need at least 2 records");
  }
  const std::size_t n = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != n) throw DataError("pearson_matrix: ragged columns");
  }

  const std::size_t m = columns.size();
  std::vector<double> mean(m, 0.0), sd(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (double x : columns[j]) mean[j] += x;
    mean[j] /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : columns[j]) ss += (x - mean[j]) * (x - mean[j]);
    sd[j] = std::sqrt(ss / static_cast<double>(n - 1));  // sample normalization
    if (sd[j] == 0.0) {
      throw NumericError("pearson_matrix: zero variance in metric '" + labels[j] + "'");
    }
  }

  CorrelationMatrix out;
  out.labels = labels;
  out.rho.assign(m, std::vector<double>(m, 1.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double cov = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        cov += (columns[i][t] - mean[i]) * (columns[j][t] - mean[j]);
      }
      cov /= static_cast<double>(n - 1);
      const double r = cov / (sd[i] * sd[j]);
      out.rho[i][j] = r;
      out.rho[j][i] = r;
    }
  }
  return out;
}

std::vector<double> activity_column(const std::vector<ActivityRecord>& records,
                                    const std::string& name) {
  std::vector<double> col;
  col.reserve(records.size());
  for (const auto& r : records) {
    if (name == "merged_pr") col.push_back(static_cast<double>(r.merged_pr_count));
    else if (name == "submitted_pr") col.push_back(static_cast<double>(r.submitted_pr_count));
    else if (name == "issues") col.push_back(static_cast<double>(r.issue_count));
    else if (name == "repos") col.push_back(static_cast<double>(r.repo_count));
    else throw DataError("activity_column: unknown metric '" + name + "'");
  }
  return col;
}

}  // namespace netlab
