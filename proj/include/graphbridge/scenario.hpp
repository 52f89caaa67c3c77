#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graphbridge/layout.hpp"

namespace graphbridge {

/// A scripted interaction: a dataset, its views, and protocol requests to
/// replay through a fresh session.
struct Scenario {
  std::filesystem::path dataset_path;  // relative paths resolve against base_dir
  std::filesystem::path base_dir = ".";
  std::vector<nlohmann::json> view_specs;
  std::uint64_t seed = kDefaultSeed;
  int iterations = kDefaultIterations;
  std::optional<int> duration_ms;
  std::vector<nlohmann::json> steps;
  std::vector<double> sample_points;
};

/// Throws ParseError on schema violations (empty steps, unsorted or
/// out-of-range sample points, missing keys).
Scenario scenario_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

struct ScenarioResult {
  int exit_code = 0;               // 0 on a fully legal replay, 1 on an error event
  std::vector<std::string> files;  // written files in order, manifest excluded
};

/// Replays the scenario and writes one file per event, `sample_points.size()`
/// frame dumps per emitted plan, and manifest.json. `out_dir` must be empty
/// or absent. Stops at the first error event.
ScenarioResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

}  // namespace graphbridge
