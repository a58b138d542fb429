#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netlab/graph.hpp"

namespace netlab {

struct ActivityRecord {
  UserId user = 0;
  std::string login;
  std::uint64_t merged_pr_count = 0;
  std::uint64_t submitted_pr_count = 0;
  std::uint64_t issue_count = 0;
  std::uint64_t repo_count = 0;
};

// Descending by merged_pr_count, ties by ascending UserId.
std::vector<ActivityRecord> merged_pr_ranking(std::vector<ActivityRecord> records,
                                              std::size_t k);

// Descending by issue_count, ties by ascending UserId.
std::vector<ActivityRecord> issue_ranking(std::vector<ActivityRecord> records, std::size_t k);

// merged / submitted. Documented as a biased influence signal and excluded
// from rankings; throws NumericError when submitted_pr_count is zero.
double merge_ratio(const ActivityRecord& r);

struct CorrelationMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rho;  // symmetric, unit diagonal
};

// Sample Pearson coefficients for each label pair. Columns are parallel
// per-user series. Throws NumericError naming any zero-variance column.
CorrelationMatrix pearson_matrix(const std::vector<std::string>& labels,
                                 const std::vector<std::vector<double>>& columns);

// Column extraction for the activity table. Valid names: merged_pr,
// submitted_pr, issues, repos.
std::vector<double> activity_column(const std::vector<ActivityRecord>& records,
                                    const std::string& name);

}  // namespace netlab
