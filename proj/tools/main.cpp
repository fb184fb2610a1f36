// Command-line interface: generate synthetic data, solve a representation
// problem, classify from a solved coefficient matrix, or run a sweep.
//
// Exit codes: 0 success, 1 usage/validation error, 2 I/O error,
// 3 every experiment run failed.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "pfsr/classifier.hpp"
#include "pfsr/diagnostics.hpp"
#include "pfsr/eigenfaces.hpp"
#include "pfsr/experiment.hpp"
#include "pfsr/matrix_io.hpp"
#include "pfsr/synth.hpp"

namespace fs = std::filesystem;
using namespace pfsr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitAllRunsFailed = 3;

struct GenArgs {
  std::string out;
  SynthSpec spec;
};

struct SolveArgs {
  std::string x_path, y_path, labels_path;
  std::string model = "lrs";
  double lambda1 = kDefaultLambda1;
  double lambda2 = kDefaultLambda2;
  double delta = kDefaultDelta;
  SolverConfig cfg;
  std::string eta = "auto";
  int dim = 0;
  double tol = 0.0;  // 0 keeps the per-residual defaults
  std::string trace_path;
  std::string out;
};

struct ClassifyArgs {
  std::string solution_dir;
  std::string labels_path;
  std::string out;
};

struct ExperimentArgs {
  std::string plan_path;
  std::string out;
};

int run_gen(const GenArgs& args) {
  const SyntheticDataset synth = generate(args.spec);
  const fs::path out(args.out);
  fs::create_directories(out);
  save_matrix(out / "X.csv", synth.data.X);
  save_labels(out / "labels.txt", synth.data.labels);
  if (synth.data.Y.cols() > 0) {
    save_matrix(out / "Y.csv", synth.data.Y);
    save_labels(out / "ytruth.txt", synth.unlabeled_truth);
  }

  Manifest manifest;
  manifest.emplace_back("command", "gen");
  manifest.emplace_back("categories", std::to_string(args.spec.categories));
  manifest.emplace_back("subspace_dim",
                        std::to_string(args.spec.subspace_dim));
  manifest.emplace_back("ambient_dim", std::to_string(args.spec.ambient_dim));
  manifest.emplace_back("labeled_per_category",
                        std::to_string(args.spec.labeled_per_category));
  manifest.emplace_back("unlabeled_per_category",
                        std::to_string(args.spec.unlabeled_per_category));
  manifest.emplace_back("noise_sigma", format_value(args.spec.noise_sigma));
  manifest.emplace_back("seed", std::to_string(args.spec.seed));
  save_manifest(out / "manifest.txt", manifest);
  return kExitOk;
}

int run_solve(const SolveArgs& args) {
  const auto start = std::chrono::steady_clock::now();

  DenseMatrix x = load_matrix(args.x_path);
  std::vector<int> labels = load_labels(args.labels_path);
  DenseMatrix y = args.y_path.empty() ? DenseMatrix(x.rows(), 0)
                                      : load_matrix(args.y_path);
  Dataset ds = make_dataset(std::move(x), std::move(labels), std::move(y));

  SolverConfig cfg = args.cfg;
  if (args.eta != "auto") cfg.eta_v = std::stod(args.eta);
  if (args.tol > 0.0) {
    cfg.tol_r1 = args.tol;
    cfg.tol_r2 = args.tol;
    cfg.tol_dz = args.tol / 10.0;
  }

  const fs::path out(args.out);
  fs::create_directories(out);

  std::optional<EigenfaceBasis> basis;
  if (args.dim > 0) {
    basis = fit_eigenfaces(ds.X, args.dim);
    DenseMatrix xf = transform(*basis, ds.X).data;
    DenseMatrix yf = transform(*basis, ds.Y).data;
    ds = make_dataset(std::move(xf), ds.labels, std::move(yf));
    save_matrix(out / "U.csv", basis->U);
    save_matrix(out / "mean.csv", basis->mean);
  }

  ProblemSpec p = build_dictionary(ds);
  p.model = parse_model(args.model);
  p.lambda1 = args.lambda1;
  p.lambda2 = args.lambda2;
  p.delta = args.delta;
  const double eta_used = resolve_eta(p, cfg);
  const Solution sol = solve_model(p, cfg);
  const ConvergenceReport report = convergence_report(sol);

  save_matrix(out / "Z.csv", sol.Z);
  save_matrix(out / "A.csv", sol.A);
  save_matrix(out / "E.csv", sol.E);
  save_trace(out / "trace.csv", sol.trace);
  if (!args.trace_path.empty()) save_trace(args.trace_path, sol.trace);

  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  Manifest manifest;
  manifest.emplace_back("command", "solve");
  manifest.emplace_back("x", args.x_path);
  manifest.emplace_back("labels", args.labels_path);
  manifest.emplace_back("y", args.y_path);
  manifest.emplace_back("model", args.model);
  manifest.emplace_back("d", std::to_string(ds.X.rows()));
  manifest.emplace_back("labeled", std::to_string(p.n_labeled));
  manifest.emplace_back("unlabeled", std::to_string(p.n_unlabeled));
  manifest.emplace_back("categories", std::to_string(ds.categories));
  manifest.emplace_back("dim", std::to_string(args.dim));
  manifest.emplace_back("lambda1", format_value(p.lambda1));
  manifest.emplace_back("lambda2", format_value(p.lambda2));
  manifest.emplace_back("delta", format_value(p.delta));
  manifest.emplace_back("mu1", format_value(cfg.mu1));
  manifest.emplace_back("mu2", format_value(cfg.mu2));
  manifest.emplace_back("eta", format_value(eta_used));
  manifest.emplace_back("max_iter", std::to_string(cfg.max_iter));
  manifest.emplace_back("tol_r1", format_value(cfg.tol_r1));
  manifest.emplace_back("tol_r2", format_value(cfg.tol_r2));
  manifest.emplace_back("tol_dz", format_value(cfg.tol_dz));
  manifest.emplace_back("converged", sol.converged ? "true" : "false");
  manifest.emplace_back("iterations", std::to_string(sol.iterations));
  manifest.emplace_back("objective",
                        format_value(sol.trace.back().objective));
  manifest.emplace_back("final_r1", format_value(report.final_r1));
  manifest.emplace_back("final_r2", format_value(report.final_r2));
  manifest.emplace_back("final_dz", format_value(report.final_dz));
  manifest.emplace_back("final_h_diff", format_value(report.final_h_diff));
  manifest.emplace_back("monotone_tail",
                        report.monotone_tail ? "true" : "false");
  manifest.emplace_back("wall_time_sec", format_value(wall));
  save_manifest(out / "manifest.txt", manifest);
  return kExitOk;
}

int run_classify(const ClassifyArgs& args) {
  const fs::path solution(args.solution_dir);
  const DenseMatrix z = load_matrix(solution / "Z.csv");
  const std::vector<int> labels = load_labels(args.labels_path);

  const Index s_c = static_cast<Index>(labels.size());
  if (z.cols() != s_c) {
    throw InvalidInput("classify: Z columns do not match the label count");
  }
  const Index m = z.rows() - s_c;
  const ClassificationResult result = classify(z, labels, m);

  const fs::path out(args.out);
  fs::create_directories(out);
  save_matrix(out / "ccr.csv", result.ccr.C);
  save_predictions(out / "pred.txt", result.labels);

  Manifest manifest;
  manifest.emplace_back("command", "classify");
  manifest.emplace_back("solution", args.solution_dir);
  manifest.emplace_back("labels", args.labels_path);
  manifest.emplace_back("unlabeled", std::to_string(m));
  int undefined = 0;
  for (bool d : result.ccr.defined) {
    if (!d) ++undefined;
  }
  manifest.emplace_back("undefined_columns", std::to_string(undefined));
  save_manifest(out / "manifest.txt", manifest);
  return kExitOk;
}

int run_experiment_cmd(const ExperimentArgs& args) {
  const ExperimentPlan plan = load_plan(args.plan_path);
  const ExperimentResults results = run_experiment(plan);
  save_experiment(args.out, plan, results);
  if (results.total_runs > 0 && results.failed_runs == results.total_runs) {
    std::cerr << "experiment: all " << results.total_runs << " runs failed\n";
    return kExitAllRunsFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-full-space representation classification toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Write a synthetic dataset as CSV");
  gen_cmd->add_option("--out", gen.out, "Output directory")->required();
  gen_cmd->add_option("--categories", gen.spec.categories, "Category count");
  gen_cmd->add_option("--subdim", gen.spec.subspace_dim,
                      "Per-category subspace dimension");
  gen_cmd->add_option("--ambient", gen.spec.ambient_dim, "Ambient dimension");
  gen_cmd->add_option("--labeled", gen.spec.labeled_per_category,
                      "Labeled samples per category");
  gen_cmd->add_option("--unlabeled", gen.spec.unlabeled_per_category,
                      "Unlabeled samples per category");
  gen_cmd->add_option("--noise", gen.spec.noise_sigma, "Noise sigma");
  gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed");

  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve a representation problem");
  solve_cmd->add_option("--x", solve_args.x_path, "Labeled matrix CSV")
      ->required();
  solve_cmd->add_option("--labels", solve_args.labels_path, "Label file")
      ->required();
  solve_cmd->add_option("--y", solve_args.y_path, "Unlabeled matrix CSV");
  solve_cmd->add_option("--model", solve_args.model, "lrs, s or lr");
  solve_cmd->add_option("--lambda1", solve_args.lambda1, "Weight on ||A||_1");
  solve_cmd->add_option("--lambda2", solve_args.lambda2, "Weight on ||E||_1");
  solve_cmd->add_option("--delta", solve_args.delta,
                        "Weight on ||E||_1 for the lr model");
  solve_cmd->add_option("--mu1", solve_args.cfg.mu1, "Penalty on X = VZ + E");
  solve_cmd->add_option("--mu2", solve_args.cfg.mu2, "Penalty on Z = A");
  solve_cmd->add_option("--eta", solve_args.eta,
                        "Majorization constant ('auto' or a value)");
  solve_cmd->add_option("--dim", solve_args.dim,
                        "Eigenface dimension (0 skips feature extraction)");
  solve_cmd->add_option("--max-iter", solve_args.cfg.max_iter,
                        "Iteration cap");
  solve_cmd->add_option("--tol", solve_args.tol,
                        "Residual tolerance (sets tol_r1 = tol_r2 = tol and "
                        "tol_dz = tol/10)");
  solve_cmd->add_option("--trace", solve_args.trace_path,
                        "Extra path for the trace CSV");
  solve_cmd->add_option("--out", solve_args.out, "Output directory")
      ->required();

  ClassifyArgs classify_args;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "Assign labels from a solved coefficient matrix");
  classify_cmd
      ->add_option("--solution", classify_args.solution_dir,
                   "Directory written by solve")
      ->required();
  classify_cmd->add_option("--labels", classify_args.labels_path, "Label file")
      ->required();
  classify_cmd->add_option("--out", classify_args.out, "Output directory")
      ->required();

  ExperimentArgs experiment_args;
  CLI::App* experiment_cmd =
      app.add_subcommand("experiment", "Run a sweep described by a plan file");
  experiment_cmd
      ->add_option("--plan", experiment_args.plan_path, "Plan file")
      ->required();
  experiment_cmd->add_option("--out", experiment_args.out, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (classify_cmd->parsed()) return run_classify(classify_args);
    if (experiment_cmd->parsed()) return run_experiment_cmd(experiment_args);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
