#include "pfsr/classifier.hpp"

#include <cmath>

#include "pfsr/model.hpp"

namespace pfsr {

DenseMatrix extract_beta(const DenseMatrix& Z, Index n_labeled,
                         Index n_unlabeled) {
  if (n_labeled < 0 || n_unlabeled < 0 ||
      Z.rows() != n_labeled + n_unlabeled || Z.cols() != n_labeled) {
    throw InvalidInput("extract_beta: Z is not (s_c + m) x s_c");
  }
  return Z.bottomRows(n_unlabeled);
}

CcrMatrix ccr(const DenseMatrix& beta, const std::vector<int>& labels,
              const std::vector<int>& n_per_category) {
  const Index s_c = static_cast<Index>(labels.size());
  const Index c = static_cast<Index>(n_per_category.size());
  if (beta.cols() != s_c) {
    throw InvalidInput("ccr: beta column count does not match labels");
  }
  for (int l : labels) {
    if (l < 1 || l > c) throw InvalidInput("ccr: label outside 1..c");
  }
  {
    std::vector<int> counted(n_per_category.size(), 0);
    for (int l : labels) ++counted[static_cast<size_t>(l - 1)];
    for (Index j = 0; j < c; ++j) {
      if (counted[static_cast<size_t>(j)] != n_per_category[static_cast<size_t>(j)]) {
        throw InvalidInput("ccr: category sizes do not match labels");
      }
    }
  }

  const Index m = beta.rows();
  CcrMatrix out;
  out.C = DenseMatrix::Zero(c, m);
  out.defined.assign(static_cast<size_t>(m), false);
  for (Index l = 0; l < m; ++l) {
    Vector sums = Vector::Zero(c);
    double denom = 0.0;
    for (Index i = 0; i < s_c; ++i) {
      const double a = std::abs(beta(l, i));
      sums[labels[static_cast<size_t>(i)] - 1] += a;
      denom += a;
    }
    if (denom == 0.0) continue;  // undefined sample, reported per column
    out.defined[static_cast<size_t>(l)] = true;
    for (Index j = 0; j < c; ++j) {
      out.C(j, l) = (sums[j] / denom) / n_per_category[static_cast<size_t>(j)];
    }
  }
  return out;
}

std::vector<int> assign_labels(const CcrMatrix& c) {
  const Index m = c.C.cols();
  std::vector<int> labels(static_cast<size_t>(m), kUnclassified);
  for (Index l = 0; l < m; ++l) {
    if (!c.defined[static_cast<size_t>(l)]) continue;
    Index best = 0;
    for (Index j = 1; j < c.C.rows(); ++j) {
      if (c.C(j, l) > c.C(best, l)) best = j;  // ties keep the lowest index
    }
    labels[static_cast<size_t>(l)] = static_cast<int>(best) + 1;
  }
  return labels;
}

ClassificationResult classify(const DenseMatrix& Z,
                              const std::vector<int>& labeled_labels,
                              Index n_unlabeled) {
  if (n_unlabeled < 1) {
    throw InvalidInput("classify: no unlabeled samples");
  }
  const Index s_c = static_cast<Index>(labeled_labels.size());
  const DenseMatrix beta = extract_beta(Z, s_c, n_unlabeled);
  ClassificationResult res;
  res.ccr = ccr(beta, labeled_labels, category_sizes(labeled_labels));
  res.labels = assign_labels(res.ccr);
  return res;
}

}  // namespace pfsr
