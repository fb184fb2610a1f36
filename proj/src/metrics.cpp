#include "pfsr/metrics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "pfsr/prox.hpp"

namespace pfsr {

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth) {
  if (predicted.empty() || predicted.size() != truth.size()) {
    throw InvalidInput("accuracy: label lists must be nonempty and equal length");
  }
  size_t hits = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] != kUnclassified && predicted[i] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double cci(const Vector& alpha, const std::vector<int>& labels) {
  if (alpha.size() != static_cast<Index>(labels.size())) {
    throw InvalidInput("cci: coefficient/label length mismatch");
  }
  int c = 0;
  for (int l : labels) {
    if (l < 1) throw InvalidInput("cci: label outside 1..c");
    c = std::max(c, l);
  }
  Vector sums = Vector::Zero(c);
  double total = 0.0;
  for (Index i = 0; i < alpha.size(); ++i) {
    const double a = std::abs(alpha[i]);
    sums[labels[static_cast<size_t>(i)] - 1] += a;
    total += a;
  }
  if (total == 0.0) {
    throw InvalidInput("cci: undefined for the zero coefficient vector");
  }
  return sums.maxCoeff() / total;
}

DenseMatrix rsi(const DenseMatrix& accuracies, RsiScope scope) {
  if (accuracies.size() == 0) throw InvalidInput("rsi: empty results matrix");
  DenseMatrix out(accuracies.rows(), accuracies.cols());
  const double global_max = accuracies.maxCoeff();
  for (Index j = 0; j < accuracies.cols(); ++j) {
    const double m = scope == RsiScope::Column ? accuracies.col(j).maxCoeff()
                                               : global_max;
    for (Index i = 0; i < accuracies.rows(); ++i) {
      out(i, j) = (m - accuracies(i, j)) / accuracies(i, j);
    }
  }
  return out;
}

StabilityBound stability_bound(const DenseMatrix& V, const Vector& x,
                               const Vector& dx, const DenseMatrix& dV) {
  if (V.rows() != x.size() || dV.rows() != V.rows() || dV.cols() != V.cols() ||
      dx.size() != x.size()) {
    throw InvalidInput("stability_bound: shape mismatch");
  }
  const double x_norm = x.norm();
  if (x_norm == 0.0) throw InvalidInput("stability_bound: x must be nonzero");

  Eigen::JacobiSVD<DenseMatrix> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector phi = svd.singularValues();
  const double phi_max = phi[0];
  const double phi_min = phi[phi.size() - 1];
  if (phi_min <= phi_max * 1e-12) {
    throw InvalidInput("stability_bound: V is rank deficient");
  }

  const Vector z1 = svd.solve(x);
  const DenseMatrix v2 = V + dV;
  Eigen::JacobiSVD<DenseMatrix> svd2(v2,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector z2 = svd2.solve(x + dx);

  StabilityBound b;
  b.kappa2 = phi_max / phi_min;
  b.epsilon = std::max(dx.norm() / x_norm, spectral_norm(dV) / phi_max);

  const double rho_ls = (V * z1 - x).norm();
  const double sin_theta = std::min(rho_ls / x_norm, 1.0);
  b.theta = std::asin(sin_theta);
  const double cos_theta = std::sqrt(std::max(1.0 - sin_theta * sin_theta, 0.0));

  const double z1_norm = z1.norm();
  b.lhs = z1_norm > 0.0 ? (z2 - z1).norm() / z1_norm
                        : std::numeric_limits<double>::infinity();
  b.rhs = cos_theta > 0.0
              ? b.epsilon * (2.0 * b.kappa2 / cos_theta +
                             (sin_theta / cos_theta) * b.kappa2 * b.kappa2)
              : std::numeric_limits<double>::infinity();
  b.admissible = b.epsilon <= phi_min / phi_max && sin_theta < 1.0;
  return b;
}

}  // namespace pfsr
