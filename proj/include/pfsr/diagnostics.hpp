#pragma once

#include <optional>

#include "pfsr/solver.hpp"

namespace pfsr {

// Post-run convergence summary. monotone_tail checks that the last 20% of
// h_diff values each stay within 1.05x of their predecessor; the 5% slack
// absorbs the non-monotone steps ADMM is allowed to take.
struct ConvergenceReport {
  double final_r1 = 0.0;
  double final_r2 = 0.0;
  double final_dz = 0.0;
  double final_h_diff = 0.0;
  bool monotone_tail = true;
  // ||Z_final - Z0||_F / ||Z0||_F when a planted coefficient matrix is
  // available (synthetic data); absolute norm if Z0 is zero.
  std::optional<double> gt_distance;
};

ConvergenceReport convergence_report(const Solution& solution,
                                     const DenseMatrix* ground_truth_Z = nullptr);

}  // namespace pfsr
