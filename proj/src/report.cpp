#include "weylcheck/report.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

#include "json.hpp"

namespace weyl {

namespace {

std::string fmt_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

std::string render_table(const RunReport& r) {
  size_t name_w = 4;
  for (const TaskResult& t : r.results) name_w = std::max(name_w, t.task.size());

  std::ostringstream out;
  out << "points " << r.points << "  seed " << r.seed << "  tol " << fmt_residual(r.tol)
      << "  orientation " << (r.orientation > 0 ? "+1" : "-1") << "\n";
  out << std::string(name_w, '-') << "--------------------------------------------\n";
  for (const TaskResult& t : r.results) {
    out << t.task << std::string(name_w - t.task.size() + 2, ' ')
        << "residual " << fmt_residual(t.max_residual) << "  scale "
        << fmt_residual(t.scale) << "  " << t.verdict << "\n";
    for (const auto& [key, val] : t.details)
      out << std::string(name_w + 2, ' ') << key << " = " << fmt_residual(val) << "\n";
    for (const std::string& note : t.notes)
      out << std::string(name_w + 2, ' ') << "note: " << note << "\n";
  }
  out << std::string(name_w, '-') << "--------------------------------------------\n";
  out << "overall: " << (r.all_pass ? "pass" : "fail") << "\n";
  return out.str();
}

std::string render_json(const RunReport& r, const std::string& timestamp) {
  nlohmann::ordered_json doc;
  doc["schema"] = kReportSchema;
  doc["engine"] = {{"name", kEngineName}, {"version", kEngineVersion}};
  doc["generated_at"] = timestamp;
  doc["run"] = {{"points", r.points},
                {"seed", r.seed},
                {"tol", r.tol},
                {"orientation", r.orientation}};
  doc["config"] = r.config_echo;
  nlohmann::ordered_json tasks = nlohmann::ordered_json::array();
  for (const TaskResult& t : r.results) {
    nlohmann::ordered_json jt;
    jt["task"] = t.task;
    jt["points_accepted"] = t.accepted;
    jt["points_rejected"] = t.rejected;
    jt["max_residual"] = t.max_residual;
    jt["scale"] = t.scale;
    jt["verdict"] = t.verdict;
    nlohmann::ordered_json det = nlohmann::ordered_json::object();
    for (const auto& [key, val] : t.details) det[key] = val;
    jt["details"] = det;
    jt["notes"] = t.notes;
    tasks.push_back(jt);
  }
  doc["tasks"] = tasks;
  doc["overall"] = r.all_pass ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

std::string iso_timestamp_now() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace weyl
