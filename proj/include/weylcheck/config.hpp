#pragma once

// Geometry bundle files: a strict TOML subset (tables, key = value pairs,
// strings, numbers, booleans, nested arrays, comments) read into a validated
// bundle of Weyl structures, map data and run parameters.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weylcheck/geometry.hpp"
#include "weylcheck/hermitian.hpp"

namespace weyl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunParams {
  int points = 64;
  long long seed = 0;
  double tol = 1e-7;
  std::vector<std::string> tasks;  // empty selects every applicable task
};

struct Bundle {
  WeylStructure domain;
  std::vector<Expr> map;                  // empty when no map is declared
  std::optional<WeylStructure> codomain;  // present exactly when map is
  std::optional<JField> jfield;           // declared domain complex structure
  Expr kfun;                              // weight -1 gauge function, or null
  std::vector<int> vertical;              // coordinate indices spanning V
  RunParams run;
  std::string source;                     // raw config text, echoed in reports
};

Bundle load_bundle(const std::string& text, const std::string& origin = "<config>");
Bundle load_bundle_file(const std::string& path);

}  // namespace weyl
