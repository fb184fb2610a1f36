#pragma once

#include "pfsr/types.hpp"

namespace pfsr {

// Elementwise shrinkage sign(x) * max(|x| - tau, 0), the proximal operator
// of tau * ||.||_1. Identity when tau == 0.
DenseMatrix soft_threshold(const DenseMatrix& m, double tau);

// Singular value thresholding U * diag(max(sigma_i - tau, 0)) * V^T, the
// proximal operator of tau * ||.||_*. Uses a full thin SVD each call.
DenseMatrix svt(const DenseMatrix& m, double tau);

// Zeroes entries (i, i) for i < n_diag and leaves everything else untouched.
// The Euclidean projection onto { M : M_ii = 0, i < n_diag }.
DenseMatrix zero_diagonal_project(const DenseMatrix& m, Index n_diag);

// Largest singular value, relative accuracy 1e-8. Power iteration on the
// smaller Gram matrix, falling back to a full SVD if it fails to settle.
double spectral_norm(const DenseMatrix& m);

}  // namespace pfsr
