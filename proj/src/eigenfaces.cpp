#include "pfsr/eigenfaces.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace pfsr {

EigenfaceBasis fit_eigenfaces(const DenseMatrix& X, int dim) {
  if (X.cols() < 2) {
    throw InvalidInput("fit_eigenfaces: need at least two columns");
  }
  if (dim < 1 || dim > std::min(X.rows(), X.cols())) {
    throw InvalidParameter("fit_eigenfaces: dim must lie in 1..min(d, columns)");
  }
  EigenfaceBasis basis;
  basis.mean = X.rowwise().mean();
  const DenseMatrix centered = X.colwise() - basis.mean;
  Eigen::BDCSVD<DenseMatrix> svd(centered,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("fit_eigenfaces: SVD did not converge");
  }
  if (svd.singularValues()[0] <= 1e-13 * std::max(X.norm(), 1.0)) {
    throw InvalidInput("fit_eigenfaces: centered data is zero (no variance)");
  }
  basis.U = svd.matrixU().leftCols(dim);
  basis.dim = dim;
  return basis;
}

FeatureMatrix transform(const EigenfaceBasis& basis, const DenseMatrix& M) {
  if (M.rows() != basis.mean.size()) {
    throw InvalidInput("transform: row count does not match the basis");
  }
  FeatureMatrix out;
  out.data = basis.U.transpose() * (M.colwise() - basis.mean);
  out.zero_column.assign(static_cast<size_t>(M.cols()), false);
  for (Index j = 0; j < out.data.cols(); ++j) {
    const double n = out.data.col(j).norm();
    if (n < 1e-150) {
      out.zero_column[static_cast<size_t>(j)] = true;
      out.data.col(j).setZero();
    } else {
      out.data.col(j) /= n;
    }
  }
  return out;
}

}  // namespace pfsr
