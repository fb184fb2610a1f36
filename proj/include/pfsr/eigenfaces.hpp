#pragma once

#include <vector>

#include "pfsr/types.hpp"

namespace pfsr {

// PCA basis fitted on labeled data only: column mean plus the top left
// singular vectors of the centered matrix.
struct EigenfaceBasis {
  DenseMatrix U;  // d x dim, orthonormal columns
  Vector mean;    // length d
  int dim = 0;
};

// Centers X by its column mean and keeps the top `dim` directions.
// Throws InvalidParameter when dim exceeds min(d, columns) and InvalidInput
// when the centered data is (numerically) zero.
EigenfaceBasis fit_eigenfaces(const DenseMatrix& X, int dim);

struct FeatureMatrix {
  DenseMatrix data;               // dim x columns, unit l2 columns
  std::vector<bool> zero_column;  // columns that projected to zero
};

// Per column: subtract the mean, project onto U, rescale to unit l2 norm.
// Columns that project to zero are flagged and left at zero rather than
// divided by zero. Never refits the basis.
FeatureMatrix transform(const EigenfaceBasis& basis, const DenseMatrix& M);

}  // namespace pfsr
