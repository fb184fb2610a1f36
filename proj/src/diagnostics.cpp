#include "pfsr/diagnostics.hpp"

namespace pfsr {

ConvergenceReport convergence_report(const Solution& solution,
                                     const DenseMatrix* ground_truth_Z) {
  if (solution.trace.empty()) {
    throw InvalidInput("convergence_report: empty trace");
  }
  ConvergenceReport rep;
  const TraceRow& last = solution.trace.back();
  rep.final_r1 = last.r1;
  rep.final_r2 = last.r2;
  rep.final_dz = last.dz;
  rep.final_h_diff = last.h_diff;

  const size_t n = solution.trace.size();
  const size_t tail = n / 5;
  for (size_t i = n - tail; i < n; ++i) {
    if (i == 0) continue;
    if (solution.trace[i].h_diff > 1.05 * solution.trace[i - 1].h_diff) {
      rep.monotone_tail = false;
      break;
    }
  }

  if (ground_truth_Z != nullptr) {
    if (ground_truth_Z->rows() != solution.Z.rows() ||
        ground_truth_Z->cols() != solution.Z.cols()) {
      throw InvalidInput("convergence_report: ground truth shape mismatch");
    }
    const double denom = ground_truth_Z->norm();
    rep.gt_distance = denom > 0.0
                          ? (solution.Z - *ground_truth_Z).norm() / denom
                          : solution.Z.norm();
  }
  return rep;
}

}  // namespace pfsr
