#include "pfsr/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "pfsr/classifier.hpp"
#include "pfsr/eigenfaces.hpp"
#include "pfsr/matrix_io.hpp"
#include "pfsr/metrics.hpp"

namespace pfsr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Unbiased-enough bounded draw that only depends on the engine's documented
// word sequence (std::uniform_int_distribution is implementation-defined).
std::uint64_t bounded(std::mt19937_64& engine, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(engine()) * n) >> 64);
}

// Fisher-Yates prefix: the first `take` positions of a shuffle of 0..n-1.
std::vector<Index> draw_without_replacement(std::mt19937_64& engine, Index n,
                                            Index take) {
  std::vector<Index> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  for (Index i = 0; i < take; ++i) {
    const Index j = i + static_cast<Index>(bounded(engine, n - i));
    std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
  }
  idx.resize(static_cast<size_t>(take));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<std::vector<Index>> columns_by_category(
    const std::vector<int>& labels, int categories) {
  std::vector<std::vector<Index>> cols(static_cast<size_t>(categories));
  for (size_t i = 0; i < labels.size(); ++i) {
    cols[static_cast<size_t>(labels[i] - 1)].push_back(static_cast<Index>(i));
  }
  return cols;
}

DenseMatrix gather(const DenseMatrix& m, const std::vector<Index>& cols) {
  DenseMatrix out(m.rows(), static_cast<Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    out.col(static_cast<Index>(j)) = m.col(cols[j]);
  }
  return out;
}

struct MethodOutcome {
  std::vector<int> predictions;
  std::optional<double> mean_cci;
};

std::optional<double> mean_cci_of_coefficients(
    const DenseMatrix& Z, const std::vector<int>& labels) {
  const Index s_c = static_cast<Index>(labels.size());
  double sum = 0.0;
  int counted = 0;
  for (Index i = 0; i < Z.cols(); ++i) {
    const Vector alpha = Z.col(i).head(s_c);
    if (alpha.lpNorm<1>() == 0.0) continue;
    sum += cci(alpha, labels);
    ++counted;
  }
  if (counted == 0) return std::nullopt;
  return sum / counted;
}

MethodOutcome run_method(MethodKind method, const Dataset& ds,
                         const ExperimentPlan& plan) {
  const Index s_c = ds.X.cols();
  const Index m = ds.Y.cols();
  MethodOutcome out;
  out.predictions.assign(static_cast<size_t>(m), kUnclassified);

  if (method == MethodKind::Src || method == MethodKind::SrcPlusTest) {
    double cci_sum = 0.0;
    int cci_count = 0;
    for (Index l = 0; l < m; ++l) {
      const Vector y = ds.Y.col(l);
      Vector gamma_labeled;
      if (method == MethodKind::Src) {
        gamma_labeled = solve_src(ds.X, y, plan.src_lambda, plan.solver);
      } else {
        const Vector full = solve_src_plus_test(ds.X, ds.Y, y, plan.src_lambda,
                                                plan.solver, true);
        gamma_labeled = full.head(s_c);
      }
      const SrcClassification cls =
          classify_src(ds.X, ds.labels, gamma_labeled, y);
      out.predictions[static_cast<size_t>(l)] = cls.label;
      if (gamma_labeled.lpNorm<1>() > 0.0) {
        cci_sum += cci(gamma_labeled, ds.labels);
        ++cci_count;
      }
    }
    if (cci_count > 0) out.mean_cci = cci_sum / cci_count;
    return out;
  }

  ProblemSpec p = build_dictionary(ds);
  p.lambda1 = plan.lambda1;
  p.lambda2 = plan.lambda2;
  p.delta = plan.delta;
  switch (method) {
    case MethodKind::SPfsr: p.model = Model::S; break;
    case MethodKind::LrPfsr: p.model = Model::LR; break;
    default: p.model = Model::LRS; break;
  }
  const Solution sol = solve_model(p, plan.solver);
  out.predictions = classify(sol.Z, ds.labels, m).labels;
  out.mean_cci = mean_cci_of_coefficients(sol.Z, ds.labels);
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto from = item.find_first_not_of(" \t");
    const auto to = item.find_last_not_of(" \t");
    if (from == std::string::npos) continue;
    items.push_back(item.substr(from, to - from + 1));
  }
  return items;
}

double parse_num(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("plan: key '" + key + "' has a non-numeric value '" + v +
                     "'");
  }
}

std::string cell_text(double v) {
  return std::isnan(v) ? std::string("error") : format_value(v);
}

void write_grid(const std::filesystem::path& path,
                const ExperimentResults& r, const DenseMatrix& grid) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << "method";
  for (int v : r.sweep_values) out << ',' << v;
  out << '\n';
  for (size_t i = 0; i < r.methods.size(); ++i) {
    out << method_name(r.methods[i]);
    for (size_t j = 0; j < r.sweep_values.size(); ++j) {
      out << ',' << cell_text(grid(static_cast<Index>(i), static_cast<Index>(j)));
    }
    out << '\n';
  }
}

}  // namespace

const char* method_name(MethodKind m) {
  switch (m) {
    case MethodKind::Src: return "src";
    case MethodKind::SrcPlusTest: return "src+test";
    case MethodKind::SPfsr: return "s-pfsr";
    case MethodKind::LrPfsr: return "lr-pfsr";
    case MethodKind::LrsPfsr: return "lrs-pfsr";
  }
  return "?";
}

MethodKind parse_method(std::string_view name) {
  if (name == "src") return MethodKind::Src;
  if (name == "src+test") return MethodKind::SrcPlusTest;
  if (name == "s-pfsr") return MethodKind::SPfsr;
  if (name == "lr-pfsr") return MethodKind::LrPfsr;
  if (name == "lrs-pfsr") return MethodKind::LrsPfsr;
  throw ParseError("unknown method '" + std::string(name) + "'");
}

Subsample subsample_dataset(const Dataset& base,
                            const std::vector<int>& unlabeled_truth,
                            SweepAxis axis, int value, std::uint64_t seed) {
  if (value < 0) throw InvalidParameter("subsample: negative sweep value");
  if (unlabeled_truth.size() != static_cast<size_t>(base.Y.cols())) {
    throw InvalidInput("subsample: truth labels do not match Y");
  }
  std::mt19937_64 engine(seed);

  const auto labeled_cols = columns_by_category(base.labels, base.categories);
  std::vector<Index> keep_labeled;
  for (const auto& cols : labeled_cols) {
    const Index have = static_cast<Index>(cols.size());
    const Index want = axis == SweepAxis::LabeledCount ? value : have;
    if (want < 1 || want > have) {
      throw InvalidParameter("subsample: requested " + std::to_string(want) +
                             " labeled samples from a category of " +
                             std::to_string(have));
    }
    for (Index pick : draw_without_replacement(engine, have, want)) {
      keep_labeled.push_back(cols[static_cast<size_t>(pick)]);
    }
  }

  int y_categories = 0;
  for (int l : unlabeled_truth) y_categories = std::max(y_categories, l);
  const auto unlabeled_cols = columns_by_category(unlabeled_truth, y_categories);
  std::vector<Index> keep_unlabeled;
  for (const auto& cols : unlabeled_cols) {
    const Index have = static_cast<Index>(cols.size());
    const Index want = axis == SweepAxis::UnlabeledCount ? value : have;
    if (want > have) {
      throw InvalidParameter("subsample: requested " + std::to_string(want) +
                             " unlabeled samples from a category of " +
                             std::to_string(have));
    }
    for (Index pick : draw_without_replacement(engine, have, want)) {
      keep_unlabeled.push_back(cols[static_cast<size_t>(pick)]);
    }
  }

  Subsample out;
  std::vector<int> labels;
  labels.reserve(keep_labeled.size());
  for (Index c : keep_labeled) {
    labels.push_back(base.labels[static_cast<size_t>(c)]);
  }
  out.unlabeled_truth.reserve(keep_unlabeled.size());
  for (Index c : keep_unlabeled) {
    out.unlabeled_truth.push_back(unlabeled_truth[static_cast<size_t>(c)]);
  }
  out.data = make_dataset(gather(base.X, keep_labeled), std::move(labels),
                          gather(base.Y, keep_unlabeled));
  return out;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  ExperimentPlan plan;
  bool have_methods = false, have_values = false, have_seeds = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto from = line.find_first_not_of(" \t");
    if (from == std::string::npos) continue;
    const auto to = line.find_last_not_of(" \t");
    line = line.substr(from, to - from + 1);

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": expected key=value");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    const auto kend = key.find_last_not_of(" \t");
    key = key.substr(0, kend + 1);
    const auto vstart = value.find_first_not_of(" \t");
    value = vstart == std::string::npos ? "" : value.substr(vstart);

    if (key == "data") {
      if (value == "synthetic") {
        plan.synthetic = true;
      } else if (value == "files") {
        plan.synthetic = false;
      } else {
        throw ParseError("plan: data must be 'synthetic' or 'files'");
      }
    } else if (key == "x") {
      plan.x_path = value;
    } else if (key == "labels") {
      plan.labels_path = value;
    } else if (key == "y") {
      plan.y_path = value;
    } else if (key == "y_truth") {
      plan.y_truth_path = value;
    } else if (key == "synth_categories") {
      plan.synth.categories = static_cast<int>(parse_num(value, key));
    } else if (key == "synth_subspace_dim") {
      plan.synth.subspace_dim = static_cast<int>(parse_num(value, key));
    } else if (key == "synth_ambient_dim") {
      plan.synth.ambient_dim = static_cast<int>(parse_num(value, key));
    } else if (key == "synth_labeled") {
      plan.synth.labeled_per_category = static_cast<int>(parse_num(value, key));
    } else if (key == "synth_unlabeled") {
      plan.synth.unlabeled_per_category =
          static_cast<int>(parse_num(value, key));
    } else if (key == "synth_noise") {
      plan.synth.noise_sigma = parse_num(value, key);
    } else if (key == "synth_seed") {
      plan.synth.seed = static_cast<std::uint64_t>(parse_num(value, key));
    } else if (key == "methods") {
      plan.methods.clear();
      for (const std::string& name : split_list(value)) {
        plan.methods.push_back(parse_method(name));
      }
      have_methods = true;
    } else if (key == "sweep") {
      if (value == "labeled_count") {
        plan.axis = SweepAxis::LabeledCount;
      } else if (value == "unlabeled_count") {
        plan.axis = SweepAxis::UnlabeledCount;
      } else {
        throw ParseError("plan: sweep must be labeled_count or unlabeled_count");
      }
    } else if (key == "sweep_values") {
      plan.sweep_values.clear();
      for (const std::string& v : split_list(value)) {
        plan.sweep_values.push_back(static_cast<int>(parse_num(v, key)));
      }
      have_values = true;
    } else if (key == "feature_dim") {
      plan.feature_dim = static_cast<int>(parse_num(value, key));
    } else if (key == "seeds") {
      plan.seeds.clear();
      for (const std::string& v : split_list(value)) {
        plan.seeds.push_back(static_cast<std::uint64_t>(parse_num(v, key)));
      }
      have_seeds = true;
    } else if (key == "lambda1") {
      plan.lambda1 = parse_num(value, key);
    } else if (key == "lambda2") {
      plan.lambda2 = parse_num(value, key);
    } else if (key == "delta") {
      plan.delta = parse_num(value, key);
    } else if (key == "src_lambda") {
      plan.src_lambda = parse_num(value, key);
    } else if (key == "mu1") {
      plan.solver.mu1 = parse_num(value, key);
    } else if (key == "mu2") {
      plan.solver.mu2 = parse_num(value, key);
    } else if (key == "eta") {
      plan.solver.eta_v = value == "auto" ? 0.0 : parse_num(value, key);
    } else if (key == "max_iter") {
      plan.solver.max_iter = static_cast<int>(parse_num(value, key));
    } else if (key == "tol") {
      const double tol = parse_num(value, key);
      plan.solver.tol_r1 = tol;
      plan.solver.tol_r2 = tol;
      plan.solver.tol_dz = tol / 10.0;
    } else if (key == "tol_dz") {
      plan.solver.tol_dz = parse_num(value, key);
    } else {
      throw ParseError(path.string() + ":" + std::to_string(line_no) +
                       ": unknown plan key '" + key + "'");
    }
  }
  if (!have_methods || plan.methods.empty()) {
    throw ParseError("plan: needs a nonempty 'methods' list");
  }
  if (!have_values || plan.sweep_values.empty()) {
    throw ParseError("plan: needs a nonempty 'sweep_values' list");
  }
  if (!have_seeds || plan.seeds.empty()) {
    plan.seeds = {1};
  }
  if (!plan.synthetic &&
      (plan.x_path.empty() || plan.labels_path.empty() || plan.y_path.empty() ||
       plan.y_truth_path.empty())) {
    throw ParseError("plan: file data needs x, labels, y and y_truth paths");
  }
  return plan;
}

ExperimentResults run_experiment(const ExperimentPlan& plan) {
  Dataset base;
  std::vector<int> truth;
  if (plan.synthetic) {
    SyntheticDataset synth = generate(plan.synth);
    base = std::move(synth.data);
    truth = std::move(synth.unlabeled_truth);
  } else {
    base = make_dataset(load_matrix(plan.x_path), load_labels(plan.labels_path),
                        load_matrix(plan.y_path));
    truth = load_labels(plan.y_truth_path);
    if (truth.size() != static_cast<size_t>(base.Y.cols())) {
      throw InvalidInput("experiment: y_truth length does not match Y columns");
    }
  }

  ExperimentResults res;
  res.methods = plan.methods;
  res.sweep_values = plan.sweep_values;
  const Index n_methods = static_cast<Index>(plan.methods.size());
  const Index n_values = static_cast<Index>(plan.sweep_values.size());
  res.mean_accuracy = DenseMatrix::Constant(n_methods, n_values, kNaN);
  res.std_accuracy = DenseMatrix::Constant(n_methods, n_values, kNaN);
  res.mean_cci = DenseMatrix::Constant(n_methods, n_values, kNaN);

  for (Index vi = 0; vi < n_values; ++vi) {
    for (size_t rep = 0; rep < plan.seeds.size(); ++rep) {
      const std::uint64_t seed = plan.seeds[rep];
      // One split per (value, repetition) cell, shared by every method.
      Subsample sub;
      std::string split_error;
      try {
        sub = subsample_dataset(base, truth, plan.axis,
                                plan.sweep_values[static_cast<size_t>(vi)],
                                seed);
        if (plan.feature_dim > 0) {
          const EigenfaceBasis basis =
              fit_eigenfaces(sub.data.X, plan.feature_dim);
          DenseMatrix xf = transform(basis, sub.data.X).data;
          DenseMatrix yf = transform(basis, sub.data.Y).data;
          sub.data = make_dataset(std::move(xf), sub.data.labels,
                                  std::move(yf));
        }
      } catch (const std::exception& e) {
        split_error = e.what();
      }

      for (Index mi = 0; mi < n_methods; ++mi) {
        RunRecord rec;
        rec.method = plan.methods[static_cast<size_t>(mi)];
        rec.sweep_value = plan.sweep_values[static_cast<size_t>(vi)];
        rec.repetition = static_cast<int>(rep);
        rec.seed = seed;
        ++res.total_runs;
        if (!split_error.empty()) {
          rec.error = split_error;
          ++res.failed_runs;
          res.runs.push_back(std::move(rec));
          continue;
        }
        try {
          const MethodOutcome outcome =
              run_method(rec.method, sub.data, plan);
          rec.accuracy = accuracy(outcome.predictions, sub.unlabeled_truth);
          rec.mean_cci = outcome.mean_cci;
          rec.ok = true;
        } catch (const std::exception& e) {
          rec.error = e.what();
          ++res.failed_runs;
        }
        res.runs.push_back(std::move(rec));
      }
    }
  }

  // Aggregate over repetitions.
  for (Index mi = 0; mi < n_methods; ++mi) {
    for (Index vi = 0; vi < n_values; ++vi) {
      std::vector<double> accs;
      std::vector<double> ccis;
      for (const RunRecord& rec : res.runs) {
        if (!rec.ok || rec.method != plan.methods[static_cast<size_t>(mi)] ||
            rec.sweep_value != plan.sweep_values[static_cast<size_t>(vi)]) {
          continue;
        }
        accs.push_back(rec.accuracy);
        if (rec.mean_cci) ccis.push_back(*rec.mean_cci);
      }
      if (accs.empty()) continue;
      const double mean =
          std::accumulate(accs.begin(), accs.end(), 0.0) / accs.size();
      double var = 0.0;
      for (double a : accs) var += (a - mean) * (a - mean);
      res.mean_accuracy(mi, vi) = mean;
      res.std_accuracy(mi, vi) =
          accs.size() > 1 ? std::sqrt(var / (accs.size() - 1)) : 0.0;
      if (!ccis.empty()) {
        res.mean_cci(mi, vi) =
            std::accumulate(ccis.begin(), ccis.end(), 0.0) / ccis.size();
      }
    }
  }
  return res;
}

void save_experiment(const std::filesystem::path& out_dir,
                     const ExperimentPlan& plan,
                     const ExperimentResults& res) {
  std::filesystem::create_directories(out_dir);
  write_grid(out_dir / "results.csv", res, res.mean_accuracy);
  write_grid(out_dir / "results_std.csv", res, res.std_accuracy);
  write_grid(out_dir / "cci.csv", res, res.mean_cci);

  // RSI over the mean accuracies, column scope; undefined where a cell
  // failed or the accuracy is zero.
  DenseMatrix rsi_grid = DenseMatrix::Constant(res.mean_accuracy.rows(),
                                               res.mean_accuracy.cols(), kNaN);
  for (Index j = 0; j < res.mean_accuracy.cols(); ++j) {
    double col_max = 0.0;
    bool any = false;
    for (Index i = 0; i < res.mean_accuracy.rows(); ++i) {
      const double a = res.mean_accuracy(i, j);
      if (!std::isnan(a)) {
        col_max = std::max(col_max, a);
        any = true;
      }
    }
    if (!any) continue;
    for (Index i = 0; i < res.mean_accuracy.rows(); ++i) {
      const double a = res.mean_accuracy(i, j);
      if (!std::isnan(a)) rsi_grid(i, j) = (col_max - a) / a;
    }
  }
  write_grid(out_dir / "rsi.csv", res, rsi_grid);

  {
    std::ofstream out(out_dir / "runs.csv");
    out << "method,sweep_value,repetition,seed,accuracy,mean_cci,status\n";
    for (const RunRecord& rec : res.runs) {
      out << method_name(rec.method) << ',' << rec.sweep_value << ','
          << rec.repetition << ',' << rec.seed << ','
          << (rec.ok ? format_value(rec.accuracy) : "nan") << ','
          << (rec.mean_cci ? format_value(*rec.mean_cci) : "nan") << ','
          << (rec.ok ? "ok" : "error: " + rec.error) << '\n';
    }
  }

  Manifest manifest;
  manifest.emplace_back("command", "experiment");
  manifest.emplace_back("data", plan.synthetic ? "synthetic" : "files");
  if (plan.synthetic) {
    manifest.emplace_back("synth_categories",
                          std::to_string(plan.synth.categories));
    manifest.emplace_back("synth_subspace_dim",
                          std::to_string(plan.synth.subspace_dim));
    manifest.emplace_back("synth_ambient_dim",
                          std::to_string(plan.synth.ambient_dim));
    manifest.emplace_back("synth_labeled",
                          std::to_string(plan.synth.labeled_per_category));
    manifest.emplace_back("synth_unlabeled",
                          std::to_string(plan.synth.unlabeled_per_category));
    manifest.emplace_back("synth_noise", format_value(plan.synth.noise_sigma));
    manifest.emplace_back("synth_seed", std::to_string(plan.synth.seed));
  } else {
    manifest.emplace_back("x", plan.x_path);
    manifest.emplace_back("labels", plan.labels_path);
    manifest.emplace_back("y", plan.y_path);
    manifest.emplace_back("y_truth", plan.y_truth_path);
  }
  {
    std::string names;
    for (const MethodKind m : plan.methods) {
      if (!names.empty()) names += ',';
      names += method_name(m);
    }
    manifest.emplace_back("methods", names);
  }
  manifest.emplace_back("sweep", plan.axis == SweepAxis::LabeledCount
                                     ? "labeled_count"
                                     : "unlabeled_count");
  {
    std::string values;
    for (int v : plan.sweep_values) {
      if (!values.empty()) values += ',';
      values += std::to_string(v);
    }
    manifest.emplace_back("sweep_values", values);
  }
  {
    std::string seeds;
    for (std::uint64_t s : plan.seeds) {
      if (!seeds.empty()) seeds += ',';
      seeds += std::to_string(s);
    }
    manifest.emplace_back("seeds", seeds);
  }
  manifest.emplace_back("feature_dim", std::to_string(plan.feature_dim));
  manifest.emplace_back("lambda1", format_value(plan.lambda1));
  manifest.emplace_back("lambda2", format_value(plan.lambda2));
  manifest.emplace_back("delta", format_value(plan.delta));
  manifest.emplace_back("src_lambda", format_value(plan.src_lambda));
  manifest.emplace_back("mu1", format_value(plan.solver.mu1));
  manifest.emplace_back("mu2", format_value(plan.solver.mu2));
  manifest.emplace_back("eta", plan.solver.eta_v > 0.0
                                   ? format_value(plan.solver.eta_v)
                                   : "auto");
  manifest.emplace_back("max_iter", std::to_string(plan.solver.max_iter));
  manifest.emplace_back("tol_r1", format_value(plan.solver.tol_r1));
  manifest.emplace_back("tol_r2", format_value(plan.solver.tol_r2));
  manifest.emplace_back("tol_dz", format_value(plan.solver.tol_dz));
  manifest.emplace_back("total_runs", std::to_string(res.total_runs));
  manifest.emplace_back("failed_runs", std::to_string(res.failed_runs));
  save_manifest(out_dir / "manifest.txt", manifest);
}

}  // namespace pfsr
