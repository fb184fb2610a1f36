// Exercises the command-line surface end to end. Expects the CLI binary
// path as argv[1]. Returns the number of failed checks.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pfsr/matrix_io.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "  ok: " << what << "\n";
  } else {
    ++failures;
    std::cout << "  FAILED: " << what << "\n";
  }
}

int run(const std::string& command) {
  const int status = std::system((command + " >/dev/null 2>&1").c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int count_lines(const fs::path& path) {
  std::ifstream in(path);
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-cli>\n";
    return 1;
  }
  const std::string cli = std::string("\"") + argv[1] + "\"";
  const fs::path root = fs::temp_directory_path() / "pfsr_cli_tests";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string data = (root / "data").string();

  check(run(cli + " gen --out " + data + " --seed 42") == 0, "gen exits 0");
  check(fs::exists(root / "data" / "X.csv") &&
            fs::exists(root / "data" / "labels.txt") &&
            fs::exists(root / "data" / "Y.csv") &&
            fs::exists(root / "data" / "ytruth.txt"),
        "gen writes the dataset files");

  // A one-iteration run produces exactly one trace data row.
  const std::string one = (root / "one").string();
  check(run(cli + " solve --x " + data + "/X.csv --labels " + data +
            "/labels.txt --y " + data + "/Y.csv --max-iter 1 --out " + one) ==
            0,
        "solve --max-iter 1 exits 0");
  check(count_lines(root / "one" / "trace.csv") == 2,
        "trace.csv has one data row after one iteration");

  check(run(cli + " solve --x " + data + "/X.csv --out " + one) == 1,
        "missing --labels is a usage error (exit 1)");
  check(run(cli + " solve --x " + data + "/nope.csv --labels " + data +
            "/labels.txt --out " + one) == 2,
        "missing input file is an I/O error (exit 2)");

  // Full solve + classify round trip.
  const std::string sol = (root / "sol").string();
  check(run(cli + " solve --x " + data + "/X.csv --labels " + data +
            "/labels.txt --y " + data + "/Y.csv --lambda1 0.02 --lambda2 5 " +
            "--trace " + (root / "extra_trace.csv").string() + " --out " +
            sol) == 0,
        "solve exits 0");
  check(fs::exists(root / "extra_trace.csv"), "--trace writes an extra copy");
  {
    const pfsr::Manifest manifest =
        pfsr::load_manifest(root / "sol" / "manifest.txt");
    bool has_converged = false, has_wall = false;
    for (const auto& [k, v] : manifest) {
      if (k == "converged" && v == "true") has_converged = true;
      if (k == "wall_time_sec") has_wall = true;
    }
    check(has_converged, "manifest records convergence");
    check(has_wall, "manifest records wall time");
  }

  const std::string cls = (root / "cls").string();
  check(run(cli + " classify --solution " + sol + " --labels " + data +
            "/labels.txt --out " + cls) == 0,
        "classify exits 0");
  check(count_lines(root / "cls" / "pred.txt") == 12,
        "pred.txt has one line per unlabeled sample");
  {
    const std::vector<int> pred =
        pfsr::load_predictions(root / "cls" / "pred.txt");
    const std::vector<int> truth =
        pfsr::load_labels(root / "data" / "ytruth.txt");
    int correct = 0;
    for (size_t i = 0; i < truth.size(); ++i) {
      if (pred[i] == truth[i]) ++correct;
    }
    check(correct == 12, "reference pipeline classifies 12/12 via the CLI");
  }
  {
    const pfsr::DenseMatrix ccr = pfsr::load_matrix(root / "cls" / "ccr.csv");
    const std::vector<int> labels =
        pfsr::load_labels(root / "data" / "labels.txt");
    std::vector<int> sizes(3, 0);
    for (int l : labels) ++sizes[static_cast<size_t>(l - 1)];
    bool sums_ok = ccr.rows() == 3 && ccr.cols() == 12;
    for (pfsr::Index l = 0; sums_ok && l < ccr.cols(); ++l) {
      double weighted = 0.0;
      for (pfsr::Index j = 0; j < ccr.rows(); ++j) {
        weighted += sizes[static_cast<size_t>(j)] * ccr(j, l);
      }
      sums_ok = std::abs(weighted - 1.0) <= 1e-10;
    }
    check(sums_ok, "ccr.csv columns satisfy the weighted-sum identity");
  }

  // No unlabeled samples: classify refuses.
  const std::string nody = (root / "nody").string();
  check(run(cli + " gen --out " + nody + " --unlabeled 0") == 0,
        "gen with no unlabeled pool");
  const std::string nosol = (root / "nosol").string();
  check(run(cli + " solve --x " + nody + "/X.csv --labels " + nody +
            "/labels.txt --max-iter 50 --out " + nosol) == 0,
        "solve without a pool still runs");
  check(run(cli + " classify --solution " + nosol + " --labels " + nody +
            "/labels.txt --out " + (root / "nocls").string()) == 1,
        "classify with no unlabeled samples exits 1");

  // Experiment plan round trip.
  {
    std::ofstream plan(root / "plan.txt");
    plan << "data = synthetic\n"
            "synth_categories = 2\n"
            "synth_subspace_dim = 1\n"
            "synth_ambient_dim = 8\n"
            "synth_labeled = 3\n"
            "synth_unlabeled = 2\n"
            "methods = lrs-pfsr\n"
            "sweep = labeled_count\n"
            "sweep_values = 3, 2\n"
            "seeds = 1\n"
            "lambda1 = 0.02\n"
            "lambda2 = 5\n"
            "max_iter = 300\n";
  }
  const std::string expdir = (root / "exp").string();
  check(run(cli + " experiment --plan " + (root / "plan.txt").string() +
            " --out " + expdir) == 0,
        "experiment exits 0");
  check(count_lines(root / "exp" / "results.csv") == 2,
        "results.csv has header plus one row per method");
  check(run(cli + " experiment --plan " + (root / "absent.txt").string() +
            " --out " + expdir) == 2,
        "missing plan file is an I/O error (exit 2)");
  {
    std::ofstream plan(root / "doomed.txt");
    plan << "data = synthetic\nsynth_labeled = 3\nmethods = lrs-pfsr\n"
            "sweep = labeled_count\nsweep_values = 99\nseeds = 1\n";
  }
  check(run(cli + " experiment --plan " + (root / "doomed.txt").string() +
            " --out " + (root / "doomed").string()) == 3,
        "a sweep whose runs all fail exits 3");

  std::cout << (failures == 0 ? "cli_tests: all checks passed\n"
                              : "cli_tests: FAILURES\n");
  fs::remove_all(root);
  return failures;
}
