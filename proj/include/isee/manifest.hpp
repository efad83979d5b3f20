#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace isee {

inline constexpr const char* kVersion = "1.0.0";

struct StageTiming {
  std::string stage;
  double wall_seconds = 0.0;
  double cpu_seconds = 0.0;

  bool operator==(const StageTiming&) const = default;
};

/// Record of one command invocation: enough to re-run it bitwise.
struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, std::uint64_t> seeds;
  std::string version = kVersion;
  std::vector<StageTiming> timings;
  std::map<std::string, std::string> input_checksums;
  nlohmann::json results = nlohmann::json::object();

  double total_cpu_seconds() const;
  bool operator==(const RunManifest&) const = default;
};

void to_json(nlohmann::json& j, const StageTiming& t);
void from_json(const nlohmann::json& j, StageTiming& t);
void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

/// Wall-clock and process CPU time since construction.
class Stopwatch {
 public:
  Stopwatch() : wall_(std::chrono::steady_clock::now()), cpu_(std::clock()) {}
  double wall_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_).count();
  }
  double cpu_seconds() const {
    return static_cast<double>(std::clock() - cpu_) / CLOCKS_PER_SEC;
  }
  StageTiming lap(std::string stage) const {
    return StageTiming{std::move(stage), wall_seconds(), cpu_seconds()};
  }

 private:
  std::chrono::steady_clock::time_point wall_;
  std::clock_t cpu_;
};

}  // namespace isee
