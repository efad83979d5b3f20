#include "commands.hpp"

#include "isee/errors.hpp"
#include "isee/kernels.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

using namespace isee::cli;

void add_estimator_flags(CLI::App* cmd, EstimateOptions& o) {
  cmd->add_option("--kind", o.kind,
                  "initial | thresholded | refined | bias-corrected | ensemble")
      ->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "scaled-Lasso penalty (default: universal rule)");
  cmd->add_option("--lambda-rule", o.lambda_rule, "universal | theoretical")
      ->capture_default_str();
  cmd->add_option("--lambda-delta", o.lambda_delta, "delta for the theoretical rule")
      ->capture_default_str();
  cmd->add_option("--lambda-eps", o.lambda_eps, "epsilon for the theoretical rule")
      ->capture_default_str();
  cmd->add_option("--cv-grid", o.cv_grid, "threshold grid size")->capture_default_str();
  cmd->add_option("--cv-fraction", o.cv_fraction, "first-fold fraction")->capture_default_str();
  cmd->add_option("--cv-splits", o.cv_splits, "number of random splits")->capture_default_str();
  cmd->add_option("--ensemble", o.ensemble, "permutations for --kind ensemble")
      ->capture_default_str();
  cmd->add_option("--sis-zeta", o.sis_zeta, "enable SIS with submodel size floor(zeta n)");
  cmd->add_flag("!--sis-raw", o.sis_standardize, "rank SIS statistics without standardizing");
  cmd->add_option("--isis", o.isis_iterations, "iterative SIS rounds (0 = off)")
      ->capture_default_str();
  cmd->add_flag("!--no-center", o.center, "do not mean-center the columns");
  cmd->add_flag("--keep-diagonal", o.keep_diagonal, "never threshold diagonal entries");
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse precision matrix estimation with innovated scalable "
               "efficient estimation (ISEE)"};
  app.require_subcommand(1);
  std::optional<int> threads;
  app.add_option("--threads", threads,
                 "worker threads (default: ISEE_NUM_THREADS, else all cores)");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "generate a ground truth and Gaussian data");
  simulate->add_option("--model", sim.model, "band | block")->capture_default_str();
  simulate->add_option("--p", sim.p, "nodes")->capture_default_str();
  simulate->add_option("--n", sim.n, "observations")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "master seed")->capture_default_str();
  simulate->add_option("--out-dir", sim.out_dir, "output directory")->capture_default_str();
  simulate->add_flag("!--no-permute", sim.permute, "keep the unpermuted node order");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "estimate a sparse precision matrix");
  estimate->add_option("--input", est.input, "data CSV (rows = observations)")->required();
  estimate->add_option("--output", est.output, "triplet output file")->required();
  estimate->add_option("--manifest", est.manifest, "manifest path");
  add_estimator_flags(estimate, est);

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "compare an estimate with the truth");
  evaluate->add_option("--estimate", eval.estimate, "estimate triplet file")->required();
  evaluate->add_option("--truth", eval.truth, "truth triplet file")->required();
  evaluate->add_option("--estimate-manifest", eval.estimate_manifest,
                       "manifest with the estimate's CPU time");
  evaluate->add_option("--output", eval.output, "metrics JSON")->required();

  BenchmarkOptions bench;
  auto* benchmark = app.add_subcommand("benchmark", "run a simulation study");
  benchmark->add_option("--spec", bench.spec, "benchmark spec JSON")->required();
  benchmark->add_option("--output", bench.output, "aggregate CSV")->required();
  benchmark->add_option("--checkpoint", bench.checkpoint, "replicate checkpoint file");

  RefitOptions refit;
  auto* refit_cmd = app.add_subcommand("refit", "refit a precision matrix on a given support");
  refit_cmd->add_option("--input", refit.input, "data CSV")->required();
  refit_cmd->add_option("--support", refit.support, "triplet file giving the support")->required();
  refit_cmd->add_option("--output", refit.output, "triplet output")->required();
  refit_cmd->add_option("--pinv-fraction", refit.pinv_fraction,
                        "use a pseudo-inverse when |support| >= fraction * n")
      ->capture_default_str();
  refit_cmd->add_flag("!--no-center", refit.center, "do not mean-center the columns");

  ClassifyOptions cls;
  auto* classify = app.add_subcommand("classify", "two-class LDA with a sparse precision matrix");
  classify->add_option("--train", cls.train, "training data CSV")->required();
  classify->add_option("--train-labels", cls.train_labels, "training labels (1 or 2)")->required();
  classify->add_option("--test", cls.test, "test data CSV")->required();
  classify->add_option("--test-labels", cls.test_labels, "test labels for metrics");
  classify->add_option("--precision", cls.precision, "precision triplet file to use");
  classify->add_option("--output", cls.output, "predictions CSV")->required();
  classify->add_option("--metrics", cls.metrics_output, "metrics JSON");
  classify->add_option("--tau-mu", cls.tau_mu, "mean-difference threshold")->capture_default_str();
  classify->add_flag("--standardize", cls.standardize, "divide columns by training sd");
  classify->add_flag("!--no-refit", cls.refit, "skip the column-wise refit");
  classify->add_option("--lambda", cls.lambda, "scaled-Lasso penalty");
  classify->add_option("--seed", cls.seed, "master seed")->capture_default_str();

  PortfolioOptions port;
  auto* portfolio = app.add_subcommand("portfolio", "Markowitz weights from a precision matrix");
  portfolio->add_option("--precision", port.precision, "precision triplet file")->required();
  portfolio->add_option("--mu", port.mu, "mean returns CSV")->required();
  portfolio->add_option("--gamma", port.gamma, "target return")->required();
  portfolio->add_option("--output", port.output, "weights CSV")->required();

  ScoresOptions sc;
  auto* scores = app.add_subcommand("scores", "innovated regression scores n^-1 Xhat^T y");
  scores->add_option("--input", sc.input, "data CSV")->required();
  scores->add_option("--response", sc.response, "response CSV")->required();
  scores->add_option("--output", sc.output, "scores CSV")->required();
  scores->add_option("--lambda", sc.lambda, "scaled-Lasso penalty");
  scores->add_flag("!--no-center", sc.center, "do not center data and response");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(isee::ExitCode::validation);
  }

  if (threads) {
    isee::set_worker_count(*threads);
  } else if (const char* env = std::getenv("ISEE_NUM_THREADS")) {
    isee::set_worker_count(std::atoi(env));
  }

  try {
    if (*simulate) run_simulate(sim);
    if (*estimate) run_estimate(est);
    if (*evaluate) run_evaluate(eval);
    if (*benchmark) run_benchmark(bench);
    if (*refit_cmd) run_refit(refit);
    if (*classify) run_classify(cls);
    if (*portfolio) run_portfolio(port);
    if (*scores) run_scores(sc);
  } catch (const isee::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(isee::ExitCode::numerical);
  }
  return 0;
}
