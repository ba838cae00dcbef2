#pragma once

// Named report bundles: each is a fixed list of checks composed from the
// library operations, with a JSON payload and a table view rendered from it.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "phantom/interpolation_oracle.hpp"
#include "phantom/linear_systems.hpp"

namespace phantom {

struct BundleOptions {
  std::int64_t n = 3;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t prime = kDefaultPrime;
  std::string list = "all";  // generality bundle only
};

// PHANTOM_SEED when set and numeric, otherwise kDefaultSeed.
std::uint64_t default_seed();

struct ReportBundle {
  std::string name;
  nlohmann::json payload;  // {"bundle", "options", "items": [...], "details", "pass"}
  bool pass = false;
};

const std::vector<std::string>& bundle_names();

// Throws std::invalid_argument on an unknown name; item failures are recorded.
ReportBundle run_bundle(const std::string& name, const BundleOptions& opts);

std::string render_table(const nlohmann::json& payload);

nlohmann::json to_json(const SystemVerdict& v);

}  // namespace phantom
