#include "pfsr/model.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <string>

namespace pfsr {

const char* model_name(Model m) {
  switch (m) {
    case Model::LRS: return "lrs";
    case Model::S: return "s";
    case Model::LR: return "lr";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  if (name == "lrs") return Model::LRS;
  if (name == "s") return Model::S;
  if (name == "lr") return Model::LR;
  throw InvalidParameter("unknown model '" + std::string(name) +
                         "' (expected lrs, s or lr)");
}

std::vector<int> category_sizes(const std::vector<int>& labels) {
  if (labels.empty()) throw InvalidInput("labels: empty list");
  if (labels.front() != 1) {
    throw InvalidInput("labels: categories must start at 1");
  }
  std::vector<int> sizes;
  int prev = 0;
  for (int l : labels) {
    if (l < prev) throw InvalidInput("labels: not nondecreasing");
    if (l > prev + 1) {
      throw InvalidInput("labels: category " + std::to_string(prev + 1) +
                         " is empty");
    }
    if (l == prev + 1) sizes.push_back(0);
    ++sizes.back();
    prev = l;
  }
  return sizes;
}

Dataset make_dataset(DenseMatrix X, std::vector<int> labels, DenseMatrix Y) {
  if (X.cols() != static_cast<Index>(labels.size())) {
    throw InvalidInput("dataset: label count does not match labeled columns");
  }
  if (X.rows() != Y.rows()) {
    throw InvalidInput("dataset: X and Y row counts differ");
  }
  if (X.rows() < 1 || X.cols() < 1) {
    throw InvalidInput("dataset: X must be nonempty");
  }
  if (!X.allFinite() || !Y.allFinite()) {
    throw InvalidInput("dataset: non-finite entry");
  }
  Dataset ds;
  ds.category_sizes = category_sizes(labels);
  ds.categories = static_cast<int>(ds.category_sizes.size());
  ds.X = std::move(X);
  ds.labels = std::move(labels);
  ds.Y = std::move(Y);
  return ds;
}

ProblemSpec build_dictionary(const Dataset& ds) {
  if (ds.X.rows() != ds.Y.rows()) {
    throw InvalidInput("build_dictionary: X and Y row counts differ");
  }
  ProblemSpec p;
  p.n_labeled = ds.X.cols();
  p.n_unlabeled = ds.Y.cols();
  p.X = ds.X;
  p.V.resize(ds.X.rows(), p.n_labeled + p.n_unlabeled);
  p.V.leftCols(p.n_labeled) = ds.X;
  p.V.rightCols(p.n_unlabeled) = ds.Y;
  return p;
}

double nuclear_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<DenseMatrix> svd(m);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("nuclear_norm: SVD did not converge");
  }
  return svd.singularValues().sum();
}

namespace {

void check_triple(const DenseMatrix& Z, const DenseMatrix& A,
                  const DenseMatrix& E, const ProblemSpec& p,
                  const char* op) {
  const Index n = p.n_labeled + p.n_unlabeled;
  if (Z.rows() != n || Z.cols() != p.n_labeled || A.rows() != n ||
      A.cols() != p.n_labeled || E.rows() != p.X.rows() ||
      E.cols() != p.n_labeled) {
    throw InvalidInput(std::string(op) + ": shape mismatch");
  }
}

}  // namespace

double objective_value(const DenseMatrix& Z, const DenseMatrix& A,
                       const DenseMatrix& E, const ProblemSpec& p) {
  check_triple(Z, A, E, p, "objective_value");
  switch (p.model) {
    case Model::S:
      return Z.lpNorm<1>();
    case Model::LR:
      return nuclear_norm(Z) + p.delta * E.lpNorm<1>();
    case Model::LRS:
      break;
  }
  return nuclear_norm(Z) + p.lambda1 * A.lpNorm<1>() + p.lambda2 * E.lpNorm<1>();
}

std::pair<double, double> feasibility_residuals(const DenseMatrix& Z,
                                                const DenseMatrix& A,
                                                const DenseMatrix& E,
                                                const ProblemSpec& p) {
  check_triple(Z, A, E, p, "feasibility_residuals");
  const double r1 =
      (p.V * Z + E - p.X).norm() / std::max(p.X.norm(), 1.0);
  const double r2 = (Z - A).norm() / std::max(Z.norm(), 1.0);
  return {r1, r2};
}

}  // namespace pfsr
