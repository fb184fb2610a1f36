#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pfsr/baseline.hpp"
#include "pfsr/synth.hpp"

namespace pfsr {

// Classification methods the harness can sweep.
enum class MethodKind { Src, SrcPlusTest, SPfsr, LrPfsr, LrsPfsr };

const char* method_name(MethodKind m);
MethodKind parse_method(std::string_view name);

enum class SweepAxis { LabeledCount, UnlabeledCount };

// One sweep: either fix the unlabeled pool and shrink the per-category
// labeled count, or fix the labeled set and grow the unlabeled count.
// Every (method, value, repetition) cell subsamples the base dataset
// per category, without replacement, deterministically from the
// repetition seed, so listed methods see identical splits.
struct ExperimentPlan {
  bool synthetic = true;
  SynthSpec synth;
  std::string x_path, labels_path, y_path, y_truth_path;

  std::vector<MethodKind> methods;
  SweepAxis axis = SweepAxis::LabeledCount;
  std::vector<int> sweep_values;
  int feature_dim = 0;  // 0 disables the eigenface projection
  SolverConfig solver;
  double lambda1 = kDefaultLambda1;
  double lambda2 = kDefaultLambda2;
  double delta = kDefaultDelta;
  double src_lambda = kDefaultSrcLambda;
  std::vector<std::uint64_t> seeds;  // one repetition per seed
};

// Key=value plan file ('#' starts a comment). See the README for the keys.
ExperimentPlan load_plan(const std::filesystem::path& path);

struct RunRecord {
  MethodKind method;
  int sweep_value = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  std::optional<double> mean_cci;
  bool ok = false;
  std::string error;
};

struct ExperimentResults {
  std::vector<MethodKind> methods;
  std::vector<int> sweep_values;
  // methods x values; NaN marks cells whose runs all failed.
  DenseMatrix mean_accuracy;
  DenseMatrix std_accuracy;
  DenseMatrix mean_cci;
  std::vector<RunRecord> runs;
  int failed_runs = 0;
  int total_runs = 0;
};

ExperimentResults run_experiment(const ExperimentPlan& plan);

// Writes results.csv, results_std.csv, rsi.csv, cci.csv, runs.csv and a
// manifest into out_dir. Failed cells are written as the token "error".
void save_experiment(const std::filesystem::path& out_dir,
                     const ExperimentPlan& plan,
                     const ExperimentResults& results);

// Deterministic per-category subsample used for one sweep cell; exposed for
// testing. Keeps the original column order within each category.
struct Subsample {
  Dataset data;
  std::vector<int> unlabeled_truth;
};
Subsample subsample_dataset(const Dataset& base,
                            const std::vector<int>& unlabeled_truth,
                            SweepAxis axis, int value, std::uint64_t seed);

}  // namespace pfsr
