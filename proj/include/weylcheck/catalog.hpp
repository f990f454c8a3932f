#pragma once

// Built-in example bundles with their expected verdict tables. Every entry
// parses, samples with the default seed, and reproduces its table.

#include <string>
#include <vector>

namespace weyl {

struct ExpectedVerdict {
  std::string task;
  std::string verdict;
};

struct CatalogEntry {
  std::string name;
  std::string note;
  std::string toml;
  std::vector<ExpectedVerdict> expected;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* catalog_find(const std::string& name);

}  // namespace weyl
