#pragma once

// Verdict aggregation and rendering: fixed-width tables for terminals and a
// versioned JSON document that is byte-stable for identical runs.

#include <string>
#include <utility>
#include <vector>

namespace weyl {

inline constexpr const char* kEngineName = "weylcheck";
inline constexpr const char* kEngineVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

struct TaskResult {
  std::string task;
  int accepted = 0;
  int rejected = 0;
  double max_residual = 0;
  double scale = 0;
  std::string verdict;  // pass | fail | report-only
  std::vector<std::pair<std::string, double>> details;
  std::vector<std::string> notes;
};

struct RunReport {
  std::vector<TaskResult> results;
  int points = 0;
  long long seed = 0;
  double tol = 0;
  int orientation = 1;
  std::string config_echo;
  bool all_pass = true;  // over tasks with a pass/fail verdict
};

std::string render_table(const RunReport& r);
std::string render_json(const RunReport& r, const std::string& timestamp);
std::string iso_timestamp_now();

}  // namespace weyl
