#include "graphbridge/scenario.hpp"

#include <cstdio>
#include <fstream>

#include "graphbridge/animation.hpp"
#include "graphbridge/error.hpp"
#include "graphbridge/session.hpp"

namespace graphbridge {

using nlohmann::json;

Scenario scenario_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ParseError("scenario must be a JSON object");
  Scenario sc;
  sc.base_dir = base_dir;
  try {
    sc.dataset_path = doc.at("dataset").get<std::string>();
    for (const auto& v : doc.at("views")) sc.view_specs.push_back(v);
    if (doc.contains("seed")) sc.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("iterations")) sc.iterations = doc["iterations"].get<int>();
    if (doc.contains("durationMs")) sc.duration_ms = doc["durationMs"].get<int>();
    for (const auto& s : doc.at("steps")) sc.steps.push_back(s);
    if (doc.contains("samplePoints"))
      for (const auto& t : doc["samplePoints"]) sc.sample_points.push_back(t.get<double>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (sc.steps.empty()) throw ParseError("scenario: steps must be non-empty");
  for (std::size_t i = 0; i < sc.sample_points.size(); ++i) {
    const double t = sc.sample_points[i];
    if (!(t >= 0.0 && t <= 1.0)) throw ParseError("scenario: sample points must lie in [0,1]");
    if (i > 0 && t < sc.sample_points[i - 1]) throw ParseError("scenario: sample points must be sorted");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return scenario_from_json(doc, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

namespace {

class OutputTree {
 public:
  explicit OutputTree(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& stem, const std::string& body) {
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%04zu_", files_.size() + 1);
    const std::string name = prefix + stem + ".json";
    write_file(name, body);
    files_.push_back(name);
  }

  void write_file(const std::string& name, const std::string& body) const {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir_ / name).string());
    out << body << '\n';
  }

  std::vector<std::string>& files() { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  if (!std::filesystem::is_empty(out_dir)) throw IoError("output directory " + out_dir.string() + " is not empty");

  Session session(SessionConfig{.base_dir = scenario.base_dir});
  OutputTree tree(out_dir);

  std::vector<json> messages;
  messages.push_back(json{{"type", "loadDataset"}, {"path", scenario.dataset_path.generic_string()}});
  json define{{"type", "defineViews"},
              {"specs", scenario.view_specs},
              {"seed", scenario.seed},
              {"iterations", scenario.iterations}};
  if (scenario.duration_ms) define["durationMs"] = *scenario.duration_ms;
  messages.push_back(std::move(define));
  messages.insert(messages.end(), scenario.steps.begin(), scenario.steps.end());

  ScenarioResult result;
  for (const json& msg : messages) {
    bool failed = false;
    for (const Event& ev : session.handle(msg)) {
      tree.write(ev.type, ev.json);
      if (ev.type == "error") failed = true;
      if (ev.type == "plan") {
        for (double t : scenario.sample_points)
          tree.write("sample_t" + format_number(t), frame_to_json(sample(*session.state().plan, t)));
      }
    }
    if (failed) {
      result.exit_code = 1;
      break;
    }
  }
  result.files = tree.files();
  json manifest{{"status", result.exit_code == 0 ? "ok" : "error"}, {"files", result.files}};
  tree.write_file("manifest.json", manifest.dump(2));
  return result;
}

}  // namespace graphbridge
