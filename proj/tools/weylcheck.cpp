#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylcheck/catalog.hpp"
#include "weylcheck/config.hpp"
#include "weylcheck/report.hpp"
#include "weylcheck/runner.hpp"

namespace {

struct Overrides {
  std::vector<std::string> tasks;
  int points = 0;
  bool points_set = false;
  long long seed = 0;
  bool seed_set = false;
  double tol = 0;
  bool tol_set = false;
  std::string orientation;
  bool json = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--points", o.points, "number of sample points")
      ->check(CLI::Range(1, 100000))
      ->each([&o](const std::string&) { o.points_set = true; });
  cmd->add_option("--seed", o.seed, "sampling sequence offset")
      ->each([&o](const std::string&) { o.seed_set = true; });
  cmd->add_option("--tol", o.tol, "base tolerance for verdicts")
      ->each([&o](const std::string&) { o.tol_set = true; });
  cmd->add_option("--orientation", o.orientation, "chart orientation, +1 or -1");
  cmd->add_flag("--json", o.json, "print the machine readable report");
}

void apply(weyl::Bundle& b, const Overrides& o) {
  if (!o.tasks.empty()) b.run.tasks = o.tasks;
  if (o.points_set) b.run.points = o.points;
  if (o.seed_set) b.run.seed = o.seed;
  if (o.tol_set) {
    if (!(o.tol > 0)) throw weyl::ConfigError("--tol must be positive");
    b.run.tol = o.tol;
  }
  if (!o.orientation.empty()) {
    if (o.orientation == "+1" || o.orientation == "1")
      b.domain.chart.orientation = 1;
    else if (o.orientation == "-1")
      b.domain.chart.orientation = -1;
    else
      throw weyl::ConfigError("--orientation must be +1 or -1");
  }
}

int print_report(const weyl::RunReport& rep, bool json) {
  std::string out =
      json ? weyl::render_json(rep, weyl::iso_timestamp_now()) : weyl::render_table(rep);
  std::fputs(out.c_str(), stdout);
  return rep.all_pass ? 0 : 1;
}

std::string example_names() {
  std::string s;
  for (const weyl::CatalogEntry& e : weyl::catalog()) {
    if (!s.empty()) s += ", ";
    s += e.name;
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pointwise verification of Weyl-geometry identities"};
  app.require_subcommand(1);

  Overrides co;
  auto* check = app.add_subcommand("check", "run verdict tasks on a bundle file");
  std::string check_file;
  check->add_option("file", check_file, "bundle file")->required();
  check->add_option("--task", co.tasks, "task to run; repeatable, default all applicable");
  add_common(check, co);

  Overrides io;
  auto* ident = app.add_subcommand("identity", "run one named identity on a bundle file");
  std::string ident_name, ident_file;
  ident->add_option("name", ident_name, "identity name")->required();
  ident->add_option("file", ident_file, "bundle file")->required();
  add_common(ident, io);

  auto* ex = app.add_subcommand("examples", "built-in example bundles");
  ex->require_subcommand(1);
  auto* ex_list = ex->add_subcommand("list", "list example names");
  auto* ex_emit = ex->add_subcommand("emit", "write an example to <name>.toml");
  std::string ex_name;
  ex_emit->add_option("name", ex_name, "example name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      weyl::Bundle b = weyl::load_bundle_file(check_file);
      apply(b, co);
      return print_report(weyl::run_tasks(b, true), co.json);
    }
    if (*ident) {
      weyl::Bundle b = weyl::load_bundle_file(ident_file);
      apply(b, io);
      return print_report(weyl::run_identity(b, ident_name, true), io.json);
    }
    if (*ex_list) {
      for (const weyl::CatalogEntry& e : weyl::catalog())
        std::printf("%-22s %s\n", e.name.c_str(), e.note.c_str());
      return 0;
    }
    if (*ex_emit) {
      const weyl::CatalogEntry* e = weyl::catalog_find(ex_name);
      if (!e)
        throw weyl::ConfigError("unknown example '" + ex_name +
                                "'; known examples: " + example_names());
      std::string path = ex_name + ".toml";
      std::ofstream f(path, std::ios::binary);
      f << e->toml;
      if (!f) throw weyl::ConfigError("cannot write " + path);
      std::printf("wrote %s\n", path.c_str());
      return 0;
    }
  } catch (const weyl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const weyl::GeometryError& e) {
    std::fprintf(stderr, "geometry error: %s\n", e.what());
    return 3;
  } catch (const weyl::EvalError& e) {
    std::fprintf(stderr, "geometry error: %s\n", e.what());
    return 3;
  } catch (const weyl::ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  return 2;
}
