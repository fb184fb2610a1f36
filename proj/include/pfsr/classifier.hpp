#pragma once

#include <vector>

#include "pfsr/types.hpp"

namespace pfsr {

// Category contribution rates, one column per unlabeled sample. Entries are
// nonnegative membership degrees; for every defined column the identity
// sum_j n_j * C(j, l) = 1 holds. Columns whose underlying coefficient row
// is all zero are marked undefined and left at zero.
struct CcrMatrix {
  DenseMatrix C;               // c x m
  std::vector<bool> defined;   // length m
};

// The coefficients of the unlabeled atoms across all labeled-sample
// representations: entry (l, i) is the weight of unlabeled sample l in the
// representation of labeled sample i, i.e. Z's bottom m rows.
DenseMatrix extract_beta(const DenseMatrix& Z, Index n_labeled,
                         Index n_unlabeled);

// Contribution rate of unlabeled sample l to category j:
//   C(j, l) = (1/n_j) * sum_{i : label(i) = j} |beta(l, i)| / sum_i |beta(l, i)|
// Coefficients enter by magnitude in both numerator and denominator; a
// signed sum could cancel and break the membership-degree reading.
CcrMatrix ccr(const DenseMatrix& beta, const std::vector<int>& labels,
              const std::vector<int>& n_per_category);

// Per column: the lowest category index attaining the maximal contribution
// rate; undefined columns map to kUnclassified.
std::vector<int> assign_labels(const CcrMatrix& c);

struct ClassificationResult {
  CcrMatrix ccr;
  std::vector<int> labels;  // length m, kUnclassified where undefined
};

// Full decision rule on a solved coefficient matrix.
ClassificationResult classify(const DenseMatrix& Z,
                              const std::vector<int>& labeled_labels,
                              Index n_unlabeled);

}  // namespace pfsr
