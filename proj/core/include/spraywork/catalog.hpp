#pragma once

#include <string>
#include <vector>

#include "spraywork/expr.hpp"

namespace spraywork {

struct CatalogEntry {
  std::string name;
  std::string description;
  SprayModel model;
};

/// Built-in spray fixtures, in stable order.
const std::vector<CatalogEntry>& catalog_entries();

/// Lookup by name; throws UnknownCatalogEntry.
const CatalogEntry& catalog_get(const std::string& name);

}  // namespace spraywork
