#pragma once

// Task registry and execution: samples chart points once per run, evaluates
// the selected verdict tasks or one named pointwise identity over them, and
// aggregates residuals, scales and equivalence flags into a report.

#include <string>
#include <vector>

#include "weylcheck/config.hpp"
#include "weylcheck/report.hpp"

namespace weyl {

struct TaskInfo {
  std::string name;
  std::string what;
};

const std::vector<TaskInfo>& task_registry();
const std::vector<TaskInfo>& identity_registry();

// Empty string when the task applies to this bundle, otherwise the reason.
std::string task_inapplicable(const std::string& task, const Bundle& b);

std::vector<std::string> applicable_tasks(const Bundle& b);

// Runs b.run.tasks, or every applicable task when that list is empty.
// Unknown or inapplicable explicit names raise ConfigError.
RunReport run_tasks(const Bundle& b, bool parallel);

// Runs one named identity; unknown or inapplicable names raise ConfigError.
RunReport run_identity(const Bundle& b, const std::string& name, bool parallel);

}  // namespace weyl
