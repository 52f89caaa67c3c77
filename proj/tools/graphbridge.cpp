// graphbridge: dataset validation, layouts, scenario replay and the
// interactive session server.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphbridge/error.hpp"
#include "graphbridge/graph.hpp"
#include "graphbridge/layout.hpp"
#include "graphbridge/scenario.hpp"
#include "graphbridge/server.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw graphbridge::IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw graphbridge::ParseError(path.string() + ": " + e.what());
  }
}

int cmd_validate(const fs::path& dataset) {
  std::vector<graphbridge::Violation> violations;
  try {
    violations = graphbridge::collect_violations(read_json(dataset));
  } catch (const graphbridge::Error& e) {
    std::cout << e.code() << ": " << e.what() << "\n";
    return 1;
  }
  for (const auto& v : violations) std::cout << "violation: " << v.rule << ": " << v.element << "\n";
  std::cout << violations.size() << " violations\n";
  return violations.empty() ? 0 : 1;
}

int cmd_layout(const fs::path& dataset, const fs::path& views_path, std::uint64_t seed, int iterations,
               const std::string& out_path) {
  const auto graph = graphbridge::load_dataset_file(dataset.string());
  json views = read_json(views_path);
  if (views.is_object() && views.contains("views")) views = views["views"];
  if (!views.is_array()) throw graphbridge::ParseError("views file must hold an array of view specs");

  json layouts = json::array();
  for (const auto& j : views) {
    const auto spec = graphbridge::view_spec_from_json(j);
    const auto view = graphbridge::slice(graph, spec);
    const auto layout = graphbridge::compute_layout(view, seed, iterations);
    json positions = json::array();
    for (const auto& [id, p] : layout.positions) positions.push_back({{"id", id}, {"x", p.x}, {"y", p.y}});
    layouts.push_back({{"view", layout.view_id},
                       {"seed", layout.seed},
                       {"iterations", layout.iterations},
                       {"positions", positions}});
  }
  const std::string text = json{{"layouts", layouts}}.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw graphbridge::IoError("cannot write " + out_path);
    out << text;
  }
  return 0;
}

int cmd_run(const fs::path& scenario_path, const fs::path& out_dir, bool clean) {
  const auto scenario = graphbridge::load_scenario(scenario_path);
  if (clean && fs::exists(out_dir)) {
    for (const auto& entry : fs::directory_iterator(out_dir)) fs::remove_all(entry.path());
  }
  const auto result = graphbridge::run_scenario(scenario, out_dir);
  std::cout << result.files.size() << " files written to " << out_dir.string()
            << (result.exit_code == 0 ? "" : " (stopped at error event)") << "\n";
  return result.exit_code;
}

int cmd_serve(unsigned short port, const fs::path& static_dir, const fs::path& data_dir) {
  graphbridge::Server server(
      {.port = port, .static_dir = static_dir, .data_dir = data_dir, .stop_on_signal = true});
  std::cout << "graphbridge serving on port " << server.port() << std::endl;
  server.run();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graphbridge: linked small-multiple views with drag-and-drop subgraph transfer"};
  app.require_subcommand(1);

  std::string dataset;
  auto* validate = app.add_subcommand("validate", "Validate a dataset document");
  validate->add_option("dataset", dataset, "Dataset JSON file")->required();

  std::string layout_dataset, views_path, layout_out;
  std::uint64_t seed = graphbridge::kDefaultSeed;
  int iterations = graphbridge::kDefaultIterations;
  auto* layout = app.add_subcommand("layout", "Compute per-view layouts");
  layout->add_option("dataset", layout_dataset, "Dataset JSON file")->required();
  layout->add_option("--views", views_path, "JSON array of view specs")->required();
  layout->add_option("--seed", seed, "Layout seed");
  layout->add_option("--iterations", iterations, "Force iterations")->check(CLI::PositiveNumber);
  layout->add_option("--out", layout_out, "Write to file instead of stdout");

  std::string scenario_path, out_dir;
  bool clean = false;
  auto* run = app.add_subcommand("run", "Replay a scenario and dump events and frames");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", out_dir, "Output directory (must be empty)")->required();
  run->add_flag("--clean", clean, "Empty the output directory first");

  unsigned short port = graphbridge::port_from_environment();
  std::string static_dir, data_dir = ".";
  auto* serve = app.add_subcommand("serve", "Serve the session protocol over WebSocket");
  serve->add_option("--port", port, "Listen port (default $GRAPHBRIDGE_PORT or 7341)");
  serve->add_option("--static", static_dir, "Directory of client assets");
  serve->add_option("--data", data_dir, "Base directory for loadDataset paths");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(dataset);
    if (*layout) return cmd_layout(layout_dataset, views_path, seed, iterations, layout_out);
    if (*run) return cmd_run(scenario_path, out_dir, clean);
    if (*serve) return cmd_serve(port, static_dir, data_dir);
  } catch (const graphbridge::Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
