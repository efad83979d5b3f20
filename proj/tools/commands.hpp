#pragma once

#include "isee/estimate.hpp"
#include "isee/manifest.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace isee::cli {

namespace fs = std::filesystem;

struct SimulateOptions {
  std::string model = "band";
  Index p = 100;
  Index n = 200;
  std::uint64_t seed = 1;
  fs::path out_dir = ".";
  bool permute = true;
};

struct EstimateOptions {
  fs::path input;
  fs::path output;
  std::optional<fs::path> manifest;  // default: <output>.manifest.json
  std::string kind = "thresholded";
  std::optional<double> lambda;
  std::string lambda_rule = "universal";  // or "theoretical"
  double lambda_delta = 2.0;
  double lambda_eps = 0.1;
  Index cv_grid = 20;
  double cv_fraction = 0.9;
  Index cv_splits = 5;
  Index ensemble = 5;
  std::optional<double> sis_zeta;
  bool sis_standardize = true;
  int isis_iterations = 0;
  bool center = true;
  bool keep_diagonal = false;
  std::uint64_t seed = 1;
};

struct EvaluateOptions {
  fs::path estimate;
  fs::path truth;
  std::optional<fs::path> estimate_manifest;
  fs::path output;
};

struct BenchmarkOptions {
  fs::path spec;
  fs::path output;
  std::optional<fs::path> checkpoint;  // default: <output>.checkpoint.jsonl
};

struct RefitOptions {
  fs::path input;
  fs::path support;
  fs::path output;
  double pinv_fraction = 0.9;
  bool center = true;
};

struct ClassifyOptions {
  fs::path train;
  fs::path train_labels;
  fs::path test;
  std::optional<fs::path> test_labels;
  std::optional<fs::path> precision;
  fs::path output;
  std::optional<fs::path> metrics_output;
  double tau_mu = 0.0;
  bool standardize = false;
  bool refit = true;
  std::optional<double> lambda;
  std::uint64_t seed = 1;
};

struct PortfolioOptions {
  fs::path precision;
  fs::path mu;
  double gamma = 0.0;
  fs::path output;
};

struct ScoresOptions {
  fs::path input;
  fs::path response;
  fs::path output;
  std::optional<double> lambda;
  bool center = true;
};

// Every command writes its outputs and a run manifest; the returned manifest
// is the one written.
RunManifest run_simulate(const SimulateOptions& opts);
RunManifest run_estimate(const EstimateOptions& opts);
RunManifest run_evaluate(const EvaluateOptions& opts);
RunManifest run_benchmark(const BenchmarkOptions& opts);
RunManifest run_refit(const RefitOptions& opts);
RunManifest run_classify(const ClassifyOptions& opts);
RunManifest run_portfolio(const PortfolioOptions& opts);
RunManifest run_scores(const ScoresOptions& opts);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(count); 0 for one value
};
MeanSe mean_and_se(const std::vector<double>& values);

/// Subtracts each column's mean.
Matrix center_columns(const Matrix& x);

/// Divides each column by its 1/n standard deviation (constant columns kept).
Matrix standardize_columns(const Matrix& x);

}  // namespace isee::cli
