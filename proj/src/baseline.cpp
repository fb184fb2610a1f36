#include "pfsr/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "pfsr/prox.hpp"

namespace pfsr {

Vector solve_src(const DenseMatrix& X, const Vector& y, double lambda,
                 const SolverConfig& cfg) {
  if (y.size() != X.rows()) {
    throw InvalidInput("solve_src: y length does not match X rows");
  }
  if (!(lambda > 0.0)) {
    throw InvalidParameter("solve_src: lambda must be positive");
  }
  const DenseMatrix gram = X.transpose() * X;
  const Vector xty = X.transpose() * y;
  const double lip = spectral_norm(gram);
  Vector gamma = Vector::Zero(X.cols());
  if (lip == 0.0) return gamma;

  const double step = 1.0 / lip;
  const double thresh = lambda * step;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const Vector grad = gram * gamma - xty;
    Vector next(gamma.size());
    for (Index i = 0; i < gamma.size(); ++i) {
      const double v = gamma[i] - step * grad[i];
      const double shrunk = std::abs(v) - thresh;
      next[i] = shrunk > 0.0 ? (v < 0.0 ? -shrunk : shrunk) : 0.0;
    }
    const double change = (next - gamma).norm() / std::max(gamma.norm(), 1.0);
    gamma = std::move(next);
    if (change <= 1e-8) break;
  }
  return gamma;
}

SrcClassification classify_src(const DenseMatrix& X,
                               const std::vector<int>& labels,
                               const Vector& gamma, const Vector& y) {
  if (gamma.size() != X.cols() ||
      static_cast<Index>(labels.size()) != X.cols()) {
    throw InvalidInput("classify_src: gamma/labels do not match X columns");
  }
  int c = 0;
  for (int l : labels) {
    if (l < 1) throw InvalidInput("classify_src: label outside 1..c");
    c = std::max(c, l);
  }

  SrcClassification out;
  out.residuals = Vector::Zero(c);
  if (gamma.isZero(0.0)) {
    out.defined = false;
    out.label = kUnclassified;
    out.residuals.setConstant(y.norm());
    return out;
  }
  int best = 0;
  for (int j = 0; j < c; ++j) {
    Vector masked = Vector::Zero(gamma.size());
    for (Index i = 0; i < gamma.size(); ++i) {
      if (labels[static_cast<size_t>(i)] == j + 1) masked[i] = gamma[i];
    }
    out.residuals[j] = (y - X * masked).norm();
    if (out.residuals[j] < out.residuals[best]) best = j;
  }
  out.label = best + 1;
  return out;
}

Vector solve_src_plus_test(const DenseMatrix& X, const DenseMatrix& Y,
                           const Vector& y, double lambda,
                           const SolverConfig& cfg, bool exclude_query) {
  if (X.rows() != Y.rows() || y.size() != X.rows()) {
    throw InvalidInput("solve_src_plus_test: row counts differ");
  }
  Index excluded = -1;
  if (exclude_query) {
    for (Index j = 0; j < Y.cols(); ++j) {
      if ((Y.col(j).array() == y.array()).all()) {
        excluded = j;
        break;
      }
    }
  }

  const Index total = X.cols() + Y.cols();
  DenseMatrix dict(X.rows(), excluded >= 0 ? total - 1 : total);
  dict.leftCols(X.cols()) = X;
  Index col = X.cols();
  for (Index j = 0; j < Y.cols(); ++j) {
    if (j == excluded) continue;
    dict.col(col++) = Y.col(j);
  }

  const Vector packed = solve_src(dict, y, lambda, cfg);
  Vector gamma = Vector::Zero(total);
  gamma.head(X.cols()) = packed.head(X.cols());
  col = X.cols();
  for (Index j = 0; j < Y.cols(); ++j) {
    if (j == excluded) continue;
    gamma[X.cols() + j] = packed[col++];
  }
  return gamma;
}

}  // namespace pfsr
