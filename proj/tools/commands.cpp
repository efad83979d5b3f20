#include "commands.hpp"

#include "isee/applications.hpp"
#include "isee/errors.hpp"
#include "isee/io.hpp"
#include "isee/kernels.hpp"
#include "isee/metrics.hpp"
#include "isee/pipeline.hpp"
#include "isee/rng.hpp"
#include "isee/simgen.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace isee::cli {
namespace {

using nlohmann::json;

fs::path default_manifest(const fs::path& output) {
  return fs::path(output.string() + ".manifest.json");
}

std::vector<std::string> node_header(Index p) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(p));
  for (Index j = 1; j <= p; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

Matrix load_data(const fs::path& path, Index min_rows, Index min_cols) {
  const auto table = io::read_csv(path);
  if (table.values.rows() < min_rows || table.values.cols() < min_cols) {
    throw InvalidInput(path.string() + ": need at least " + std::to_string(min_rows) +
                       " rows and " + std::to_string(min_cols) + " columns, got " +
                       std::to_string(table.values.rows()) + " x " +
                       std::to_string(table.values.cols()));
  }
  return table.values;
}

std::vector<int> load_labels(const fs::path& path) {
  const Vector v = io::read_vector(path);
  std::vector<int> labels(static_cast<size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] != 1.0 && v[i] != 2.0) {
      throw InvalidInput(path.string() + ": labels must be 1 or 2 (row " +
                         std::to_string(i + 1) + ")");
    }
    labels[static_cast<size_t>(i)] = static_cast<int>(v[i]);
  }
  return labels;
}

PrecisionEstimate load_precision(const fs::path& path) {
  return PrecisionEstimate(io::read_triplets(path), EstimateKind::thresholded);
}

IseeOptions pipeline_options(const EstimateOptions& opts, Index n, Index p) {
  IseeOptions o;
  if (opts.lambda) {
    o.lambda = *opts.lambda;
  } else if (opts.lambda_rule == "theoretical") {
    o.lambda = theoretical_lambda(n, p, opts.lambda_delta, opts.lambda_eps);
  } else if (opts.lambda_rule != "universal") {
    throw InvalidInput("unknown lambda rule '" + opts.lambda_rule + "'");
  }
  o.cv.grid_size = opts.cv_grid;
  o.cv.n1_fraction = opts.cv_fraction;
  o.cv.num_splits = opts.cv_splits;
  o.cv.rng_seed = opts.seed;
  o.keep_diagonal = opts.keep_diagonal;
  if (opts.sis_zeta) {
    ScreenConfig screen;
    screen.zeta = *opts.sis_zeta;
    screen.standardize = opts.sis_standardize;
    screen.isis_iterations = opts.isis_iterations;
    o.screen = screen;
  }
  return o;
}

json estimate_parameters(const EstimateOptions& opts) {
  json j = {{"kind", opts.kind},
            {"lambda_rule", opts.lambda_rule},
            {"lambda_delta", opts.lambda_delta},
            {"lambda_eps", opts.lambda_eps},
            {"cv_grid", opts.cv_grid},
            {"cv_fraction", opts.cv_fraction},
            {"cv_splits", opts.cv_splits},
            {"ensemble", opts.ensemble},
            {"sis_standardize", opts.sis_standardize},
            {"isis_iterations", opts.isis_iterations},
            {"center", opts.center},
            {"keep_diagonal", opts.keep_diagonal}};
  j["lambda"] = opts.lambda ? json(*opts.lambda) : json(nullptr);
  j["sis_zeta"] = opts.sis_zeta ? json(*opts.sis_zeta) : json(nullptr);
  return j;
}

// Runs the requested estimator on (already centered) data, recording stage
// timings and summary results into `manifest`.
PrecisionEstimate estimate_precision(const Matrix& x, const EstimateOptions& opts,
                                     RunManifest& manifest) {
  const auto kind = estimate_kind_from_string(opts.kind);
  const auto pipe = pipeline_options(opts, x.rows(), x.cols());

  if (kind == EstimateKind::ensemble) {
    Stopwatch watch;
    auto result = permutation_ensemble(x, opts.ensemble, opts.seed, pipe);
    manifest.timings.push_back(watch.lap("ensemble"));
    manifest.results["lambda"] = resolve_lambda(pipe, x.rows(), x.cols());
    manifest.results["taus"] = result.taus;
    return std::move(result.estimate);
  }

  Stopwatch watch;
  auto result = run_isee(x, pipe);
  manifest.timings.push_back(watch.lap("isee"));
  manifest.results["lambda"] = result.lambda;
  manifest.results["tau"] = result.cv.tau;
  manifest.results["cv_degenerate"] = result.cv.degenerate;
  Index ridge = 0;
  for (const auto& b : result.blocks) ridge += b.ridge_applied ? 1 : 0;
  manifest.results["ridge_blocks"] = ridge;

  switch (kind) {
    case EstimateKind::initial:
      return std::move(result.initial);
    case EstimateKind::thresholded:
      return std::move(result.thresholded);
    case EstimateKind::refined: {
      Stopwatch refine_watch;
      RefineReport report;
      auto refined = refine(x, result.thresholded.support(), result.lambda,
                            result.thresholded, result.partition, pipe.solver,
                            Execution::parallel, &report);
      manifest.timings.push_back(refine_watch.lap("refine"));
      manifest.results["links_refit"] = report.links_refit;
      manifest.results["refine_fallbacks"] = report.fallbacks;
      return refined;
    }
    case EstimateKind::bias_corrected: {
      Stopwatch bc_watch;
      auto corrected = bias_corrected(result.initial, result.blocks);
      manifest.timings.push_back(bc_watch.lap("bias_correction"));
      return corrected;
    }
    case EstimateKind::ensemble:
      break;
  }
  throw InvalidInput("unsupported estimator kind");
}

}  // namespace

Matrix center_columns(const Matrix& x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  return x.rowwise() - mean;
}

Matrix standardize_columns(const Matrix& x) {
  Matrix out = center_columns(x);
  for (Index j = 0; j < out.cols(); ++j) {
    const double sd = std::sqrt(out.col(j).squaredNorm() / static_cast<double>(out.rows()));
    if (sd > 0.0) out.col(j) /= sd;
  }
  return out;
}

MeanSe mean_and_se(const std::vector<double>& values) {
  if (values.empty()) return {};
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

RunManifest run_simulate(const SimulateOptions& opts) {
  RunManifest manifest;
  manifest.command = "simulate";
  manifest.parameters = {{"model", opts.model}, {"p", opts.p}, {"n", opts.n},
                         {"permute", opts.permute}, {"out_dir", opts.out_dir.string()}};
  manifest.seeds["seed"] = opts.seed;

  Stopwatch watch;
  GroundTruth truth;
  if (opts.model == "band") {
    truth = band_precision(opts.p, opts.seed, opts.permute);
  } else if (opts.model == "block") {
    truth = block_precision(opts.p, opts.seed, opts.permute);
  } else {
    throw InvalidInput("unknown model '" + opts.model + "' (expected band or block)");
  }
  const Matrix x = sample_gaussian(truth, opts.n, opts.seed);
  manifest.timings.push_back(watch.lap("generate"));

  io::write_csv(opts.out_dir / "data.csv", x, node_header(opts.p));
  io::write_csv(opts.out_dir / "truth.csv", truth.omega);
  io::write_triplets(opts.out_dir / "truth.triplet", truth.omega);
  manifest.results = {{"model", truth.spec.model},
                      {"p", truth.spec.p},
                      {"blocks", truth.spec.blocks},
                      {"edges", truth.spec.edges},
                      {"permutation", truth.permutation}};
  write_manifest(opts.out_dir / "manifest.json", manifest);
  return manifest;
}

RunManifest run_estimate(const EstimateOptions& opts) {
  RunManifest manifest;
  manifest.command = "estimate";
  manifest.parameters = estimate_parameters(opts);
  manifest.parameters["input"] = opts.input.string();
  manifest.parameters["output"] = opts.output.string();
  manifest.seeds["seed"] = opts.seed;
  manifest.input_checksums[opts.input.string()] = io::file_checksum(opts.input);

  Stopwatch load_watch;
  Matrix x = load_data(opts.input, 10, 2);
  if (opts.center) x = center_columns(x);
  manifest.timings.push_back(load_watch.lap("load"));
  manifest.parameters["n"] = x.rows();
  manifest.parameters["p"] = x.cols();

  const auto est = estimate_precision(x, opts, manifest);
  manifest.results["links"] = est.support().size();
  io::write_triplets(opts.output, est.values());
  write_manifest(opts.manifest.value_or(default_manifest(opts.output)), manifest);
  return manifest;
}

RunManifest run_evaluate(const EvaluateOptions& opts) {
  RunManifest manifest;
  manifest.command = "evaluate";
  manifest.parameters = {{"estimate", opts.estimate.string()},
                         {"truth", opts.truth.string()},
                         {"output", opts.output.string()}};
  const Matrix truth = io::read_triplets(opts.truth);
  const Matrix est_values = io::read_triplets(opts.estimate);
  manifest.input_checksums[opts.estimate.string()] = io::file_checksum(opts.estimate);
  manifest.input_checksums[opts.truth.string()] = io::file_checksum(opts.truth);
  if (truth.rows() != est_values.rows()) {
    throw InvalidInput("estimate and truth have different node counts");
  }
  const PrecisionEstimate est(est_values, EstimateKind::thresholded);
  const Index p = truth.rows();
  const LinkSet truth_support = matrix_support(truth);
  const auto rec = recovery_metrics(est.support(), truth_support, p);
  const auto conf = confusion_rates(est.support(), truth_support, p);

  json cpu = nullptr;
  const fs::path manifest_path = opts.estimate_manifest.value_or(default_manifest(opts.estimate));
  if (fs::exists(manifest_path)) {
    cpu = read_manifest(manifest_path).total_cpu_seconds();
  } else if (opts.estimate_manifest) {
    throw IoError("cannot open '" + manifest_path.string() + "'");
  }
  const json metrics = {{"tpr", rec.tpr},
                        {"fpr", rec.fpr},
                        {"frobenius", frobenius_error(est, truth)},
                        {"cpu_seconds", cpu},
                        {"recall", conf.recall},
                        {"false_positive_rate", conf.false_positive_rate},
                        {"true_positives", conf.true_positives},
                        {"false_positives", conf.false_positives},
                        {"false_negatives", conf.false_negatives},
                        {"identified_links", est.support().size()},
                        {"true_links", truth_support.size()}};
  io::write_text(opts.output, metrics.dump(2) + "\n");
  manifest.results = metrics;
  write_manifest(default_manifest(opts.output), manifest);
  return manifest;
}

RunManifest run_benchmark(const BenchmarkOptions& opts) {
  json spec;
  try {
    spec = json::parse(io::read_text(opts.spec));
  } catch (const json::exception& e) {
    throw InvalidInput(opts.spec.string() + ": malformed benchmark spec: " + e.what());
  }
  const auto models = spec.value("models", std::vector<std::string>{"band"});
  const auto ps = spec.value("p", std::vector<Index>{});
  const Index n = spec.value("n", Index{200});
  const Index reps = spec.value("reps", Index{1});
  const std::uint64_t seed = spec.value("seed", std::uint64_t{1});
  if (ps.empty() || reps < 1) throw InvalidInput("benchmark spec needs p values and reps >= 1");

  EstimateOptions est_opts;
  est_opts.kind = spec.value("kind", std::string("ensemble"));
  est_opts.ensemble = spec.value("ensemble", Index{5});
  if (spec.contains("lambda")) est_opts.lambda = spec["lambda"].get<double>();
  if (spec.contains("sis_zeta")) est_opts.sis_zeta = spec["sis_zeta"].get<double>();

  const std::string checksum = io::file_checksum(opts.spec);
  const fs::path checkpoint =
      opts.checkpoint.value_or(fs::path(opts.output.string() + ".checkpoint.jsonl"));

  // (model, p, rep) -> stored replicate row
  std::map<std::tuple<std::string, Index, Index>, json> done;
  if (fs::exists(checkpoint)) {
    std::istringstream lines(io::read_text(checkpoint));
    std::string line;
    while (std::getline(lines, line)) {
      if (line.empty()) continue;
      json row;
      try {
        row = json::parse(line);
      } catch (const json::exception&) {
        continue;  // a torn final line from an interrupted run
      }
      if (row.value("spec_checksum", std::string()) != checksum) continue;
      done[{row["model"].get<std::string>(), row["p"].get<Index>(), row["rep"].get<Index>()}] = row;
    }
  }

  RunManifest manifest;
  manifest.command = "benchmark";
  manifest.parameters = spec;
  manifest.seeds["seed"] = seed;
  manifest.input_checksums[opts.spec.string()] = checksum;

  Index resumed = 0;
  std::string csv =
      "model,p,n,reps,frobenius_mean,frobenius_se,tpr_mean,tpr_se,fpr_mean,fpr_se,"
      "cpu_seconds_mean,cpu_seconds_se\n";
  for (size_t mi = 0; mi < models.size(); ++mi) {
    const auto& model = models[mi];
    for (const Index p : ps) {
      std::vector<double> frob, tpr, fpr, cpu;
      for (Index rep = 0; rep < reps; ++rep) {
        json row;
        const auto key = std::make_tuple(model, p, rep);
        if (auto it = done.find(key); it != done.end()) {
          row = it->second;
          ++resumed;
        } else {
          const std::uint64_t rep_seed = derive_seed(
              seed, {stream::replicate, static_cast<std::uint64_t>(mi),
                     static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(rep)});
          const GroundTruth truth = model == "block" ? block_precision(p, rep_seed)
                                    : model == "band"
                                        ? band_precision(p, rep_seed)
                                        : throw InvalidInput("unknown model '" + model + "'");
          const Matrix x = center_columns(sample_gaussian(truth, n, rep_seed));
          EstimateOptions rep_opts = est_opts;
          rep_opts.seed = rep_seed;
          RunManifest scratch;
          Stopwatch watch;
          const auto est = estimate_precision(x, rep_opts, scratch);
          const double cpu_seconds = watch.cpu_seconds();
          const auto rec = recovery_metrics(est.support(), truth.support, p);
          row = {{"spec_checksum", checksum}, {"model", model}, {"p", p}, {"n", n},
                 {"rep", rep}, {"frobenius", frobenius_error(est, truth.omega)},
                 {"tpr", rec.tpr}, {"fpr", rec.fpr}, {"cpu_seconds", cpu_seconds}};
          std::ofstream out(checkpoint, std::ios::app);
          if (!out) throw IoError("cannot append to '" + checkpoint.string() + "'");
          out << row.dump() << "\n";
        }
        frob.push_back(row["frobenius"].get<double>());
        tpr.push_back(row["tpr"].get<double>());
        fpr.push_back(row["fpr"].get<double>());
        cpu.push_back(row["cpu_seconds"].get<double>());
      }
      csv += model + "," + std::to_string(p) + "," + std::to_string(n) + "," +
             std::to_string(reps);
      for (const auto* series : {&frob, &tpr, &fpr, &cpu}) {
        const auto s = mean_and_se(*series);
        csv += "," + io::format_double(s.mean) + "," + io::format_double(s.se);
      }
      csv += "\n";
    }
  }
  io::write_text(opts.output, csv);
  manifest.results = {{"resumed_replicates", resumed}, {"checkpoint", checkpoint.string()}};
  write_manifest(default_manifest(opts.output), manifest);
  return manifest;
}

RunManifest run_refit(const RefitOptions& opts) {
  RunManifest manifest;
  manifest.command = "refit";
  manifest.parameters = {{"input", opts.input.string()},
                         {"support", opts.support.string()},
                         {"output", opts.output.string()},
                         {"pinv_fraction", opts.pinv_fraction},
                         {"center", opts.center}};
  manifest.input_checksums[opts.input.string()] = io::file_checksum(opts.input);
  manifest.input_checksums[opts.support.string()] = io::file_checksum(opts.support);
  Matrix x = load_data(opts.input, 2, 1);
  if (opts.center) x = center_columns(x);
  const Matrix support = io::read_triplets(opts.support);
  if (support.rows() != x.cols()) {
    throw InvalidInput("support node count does not match the data");
  }
  Stopwatch watch;
  const auto refit = refit_columns(x, matrix_support(support), opts.pinv_fraction);
  manifest.timings.push_back(watch.lap("refit"));
  io::write_triplets(opts.output, refit.values());
  write_manifest(default_manifest(opts.output), manifest);
  return manifest;
}

RunManifest run_classify(const ClassifyOptions& opts) {
  RunManifest manifest;
  manifest.command = "classify";
  manifest.parameters = {{"train", opts.train.string()},
                         {"train_labels", opts.train_labels.string()},
                         {"test", opts.test.string()},
                         {"tau_mu", opts.tau_mu},
                         {"standardize", opts.standardize},
                         {"refit", opts.refit},
                         {"output", opts.output.string()}};
  manifest.parameters["lambda"] = opts.lambda ? json(*opts.lambda) : json(nullptr);
  manifest.seeds["seed"] = opts.seed;
  for (const auto& path : {opts.train, opts.train_labels, opts.test}) {
    manifest.input_checksums[path.string()] = io::file_checksum(path);
  }

  Matrix train = load_data(opts.train, 2, 2);
  Matrix test = load_data(opts.test, 1, 2);
  if (test.cols() != train.cols()) throw InvalidInput("train and test column counts differ");
  const auto labels = load_labels(opts.train_labels);
  if (opts.standardize) {
    // Scale both sets by the training standard deviations.
    const Matrix centered = center_columns(train);
    for (Index j = 0; j < train.cols(); ++j) {
      const double sd = std::sqrt(centered.col(j).squaredNorm() / static_cast<double>(train.rows()));
      if (sd > 0.0) {
        train.col(j) /= sd;
        test.col(j) /= sd;
      }
    }
  }
  const ClassStats stats = class_stats(train, labels);

  PrecisionEstimate omega;
  Stopwatch watch;
  if (opts.precision) {
    omega = load_precision(*opts.precision);
    manifest.input_checksums[opts.precision->string()] = io::file_checksum(*opts.precision);
  } else {
    // Pool the class-centered training rows.
    Matrix pooled = train;
    for (Index i = 0; i < pooled.rows(); ++i) {
      pooled.row(i) -= (labels[static_cast<size_t>(i)] == 1 ? stats.mu1 : stats.mu2).transpose();
    }
    EstimateOptions est_opts;
    est_opts.lambda = opts.lambda;
    est_opts.seed = opts.seed;
    omega = estimate_precision(pooled, est_opts, manifest);
    if (opts.refit) omega = refit_columns(pooled, omega.support());
  }
  manifest.timings.push_back(watch.lap("precision"));
  if (omega.nodes() != train.cols()) throw InvalidInput("precision size does not match the data");

  Matrix predictions(test.rows(), 2);
  std::vector<int> predicted(static_cast<size_t>(test.rows()));
  for (Index i = 0; i < test.rows(); ++i) {
    const auto decision = lda_score(omega, stats, opts.tau_mu, test.row(i).transpose());
    predictions(i, 0) = decision.score;
    predictions(i, 1) = decision.label;
    predicted[static_cast<size_t>(i)] = decision.label;
  }
  io::write_csv(opts.output, predictions, {"score", "label"});
  if (opts.test_labels) {
    manifest.input_checksums[opts.test_labels->string()] = io::file_checksum(*opts.test_labels);
    const auto truth = load_labels(*opts.test_labels);
    const auto m = classification_metrics(predicted, truth);
    const json metrics = {{"specificity", m.specificity}, {"sensitivity", m.sensitivity},
                          {"mcc", m.mcc}, {"tp", m.tp}, {"tn", m.tn}, {"fp", m.fp},
                          {"fn", m.fn}};
    manifest.results["metrics"] = metrics;
    if (opts.metrics_output) io::write_text(*opts.metrics_output, metrics.dump(2) + "\n");
  }
  write_manifest(default_manifest(opts.output), manifest);
  return manifest;
}

RunManifest run_portfolio(const PortfolioOptions& opts) {
  RunManifest manifest;
  manifest.command = "portfolio";
  manifest.parameters = {{"precision", opts.precision.string()},
                         {"mu", opts.mu.string()},
                         {"gamma", opts.gamma},
                         {"output", opts.output.string()}};
  manifest.input_checksums[opts.precision.string()] = io::file_checksum(opts.precision);
  manifest.input_checksums[opts.mu.string()] = io::file_checksum(opts.mu);
  const auto omega = load_precision(opts.precision);
  const PortfolioSpec spec{io::read_vector(opts.mu), opts.gamma};
  const Vector weights = markowitz_weights(omega, spec);
  io::write_vector(opts.output, weights, "weight");
  manifest.results = {{"sum", weights.sum()}, {"expected_return", weights.dot(spec.mu)}};
  write_manifest(default_manifest(opts.output), manifest);
  return manifest;
}

RunManifest run_scores(const ScoresOptions& opts) {
  RunManifest manifest;
  manifest.command = "scores";
  manifest.parameters = {{"input", opts.input.string()},
                         {"response", opts.response.string()},
                         {"output", opts.output.string()},
                         {"center", opts.center}};
  manifest.parameters["lambda"] = opts.lambda ? json(*opts.lambda) : json(nullptr);
  manifest.input_checksums[opts.input.string()] = io::file_checksum(opts.input);
  manifest.input_checksums[opts.response.string()] = io::file_checksum(opts.response);
  Matrix x = load_data(opts.input, 3, 2);
  Vector y = io::read_vector(opts.response);
  if (y.size() != x.rows()) throw InvalidInput("response length does not match the data rows");
  if (opts.center) {
    x = center_columns(x);
    y.array() -= y.mean();
  }
  Stopwatch watch;
  IseeOptions pipe;
  pipe.lambda = opts.lambda;
  const double lambda = resolve_lambda(pipe, x.rows(), x.cols());
  const auto blocks = fit_blocks(x, make_partition(x.cols()), lambda, pipe.solver,
                                 Execution::parallel);
  const auto xhat = assemble_xhat(x.rows(), x.cols(), blocks);
  const Vector scores = innovated_scores(xhat.values, y);
  manifest.timings.push_back(watch.lap("scores"));
  manifest.results["lambda"] = lambda;
  io::write_vector(opts.output, scores, "score");
  write_manifest(default_manifest(opts.output), manifest);
  return manifest;
}

}  // namespace isee::cli
