#include "pfsr/prox.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace pfsr {

namespace {

void require_finite(const DenseMatrix& m, const char* op) {
  if (!m.allFinite()) {
    throw InvalidInput(std::string(op) + ": matrix has a non-finite entry");
  }
}

}  // namespace

DenseMatrix soft_threshold(const DenseMatrix& m, double tau) {
  require_finite(m, "soft_threshold");
  if (!(tau >= 0.0)) {
    throw InvalidParameter("soft_threshold: tau must be nonnegative");
  }
  return m.unaryExpr([tau](double x) {
    const double shrunk = std::abs(x) - tau;
    if (shrunk <= 0.0) return 0.0;
    return x < 0.0 ? -shrunk : shrunk;
  });
}

DenseMatrix svt(const DenseMatrix& m, double tau) {
  require_finite(m, "svt");
  if (!(tau >= 0.0)) {
    throw InvalidParameter("svt: tau must be nonnegative");
  }
  Eigen::BDCSVD<DenseMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("svt: SVD did not converge");
  }
  Vector sv = svd.singularValues();
  for (Index i = 0; i < sv.size(); ++i) {
    sv[i] = std::max(sv[i] - tau, 0.0);
  }
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

DenseMatrix zero_diagonal_project(const DenseMatrix& m, Index n_diag) {
  if (n_diag < 0 || n_diag > std::min(m.rows(), m.cols())) {
    throw InvalidParameter(
        "zero_diagonal_project: n_diag exceeds matrix dimensions");
  }
  DenseMatrix out = m;
  out.diagonal().head(n_diag).setZero();
  return out;
}

double spectral_norm(const DenseMatrix& m) {
  require_finite(m, "spectral_norm");
  if (m.size() == 0) return 0.0;

  // Power iteration on the smaller of m^T m and m m^T.
  const DenseMatrix gram = m.rows() < m.cols()
                               ? DenseMatrix(m * m.transpose())
                               : DenseMatrix(m.transpose() * m);
  const Index n = gram.rows();
  Vector v = Vector::LinSpaced(n, 1.0, 2.0).normalized();
  double sigma = 0.0;
  for (int it = 0; it < 1000; ++it) {
    Vector w = gram * v;
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    const double next = std::sqrt(std::max(v.dot(w), 0.0));
    if (it > 0 && std::abs(next - sigma) <= 1e-10 * std::max(next, 1e-300)) {
      return next;
    }
    sigma = next;
    v = w / wn;
  }
  // Did not settle: fall back to a full SVD.
  Eigen::BDCSVD<DenseMatrix> svd(m);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("spectral_norm: SVD did not converge");
  }
  return svd.singularValues()[0];
}

}  // namespace pfsr
