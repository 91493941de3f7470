#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gwp {

struct CheckItem {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "in" or "report"
  bool pass = true;
};

struct CheckReport {
  std::string suite;
  std::string fixture;  // "default" or the provided path
  bool pass = true;
  std::vector<CheckItem> items;

  nlohmann::json to_json() const;
};

const std::vector<std::string>& check_suite_names();

/// Runs one verification suite against a fixture config (empty path = the
/// suite's built-in default). Throws a config error for unknown suite names.
CheckReport run_check_suite(const std::string& suite, const std::string& fixture_path = "");

}  // namespace gwp
