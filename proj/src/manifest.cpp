#include "isee/manifest.hpp"

#include "isee/errors.hpp"
#include "isee/io.hpp"

namespace isee {

double RunManifest::total_cpu_seconds() const {
  double total = 0.0;
  for (const auto& t : timings) total += t.cpu_seconds;
  return total;
}

void to_json(nlohmann::json& j, const StageTiming& t) {
  j = nlohmann::json{{"stage", t.stage},
                     {"wall_seconds", t.wall_seconds},
                     {"cpu_seconds", t.cpu_seconds}};
}

void from_json(const nlohmann::json& j, StageTiming& t) {
  j.at("stage").get_to(t.stage);
  j.at("wall_seconds").get_to(t.wall_seconds);
  j.at("cpu_seconds").get_to(t.cpu_seconds);
}

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = nlohmann::json{{"command", m.command},
                     {"parameters", m.parameters},
                     {"seeds", m.seeds},
                     {"version", m.version},
                     {"timings", m.timings},
                     {"input_checksums", m.input_checksums},
                     {"results", m.results}};
}

void from_json(const nlohmann::json& j, RunManifest& m) {
  j.at("command").get_to(m.command);
  m.parameters = j.value("parameters", nlohmann::json::object());
  m.seeds = j.value("seeds", std::map<std::string, std::uint64_t>{});
  j.at("version").get_to(m.version);
  m.timings = j.value("timings", std::vector<StageTiming>{});
  m.input_checksums = j.value("input_checksums", std::map<std::string, std::string>{});
  m.results = j.value("results", nlohmann::json::object());
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  io::write_text(path, nlohmann::json(m).dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  const auto text = io::read_text(path);
  try {
    return nlohmann::json::parse(text).get<RunManifest>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": malformed manifest: " + e.what());
  }
}

}  // namespace isee
