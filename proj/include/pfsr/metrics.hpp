#pragma once

#include <string>
#include <vector>

#include "pfsr/types.hpp"

namespace pfsr {

// Fraction of exact matches; kUnclassified never matches a real label.
double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth);

// Category concentration index: the share of the coefficient vector's l1
// mass carried by its dominant category. Lies in [1/c, 1]; equals 1 iff the
// support sits in a single category. Throws on an all-zero vector.
double cci(const Vector& alpha, const std::vector<int>& labels);

enum class RsiScope { Column, Global };

// Relative stability index (M - a_ij) / a_ij, where M is the column maximum
// (default) or the global maximum. Entries with a_ij = 0 divide by zero and
// come out as +inf under IEEE arithmetic, which is the per-entry report.
DenseMatrix rsi(const DenseMatrix& accuracies,
                RsiScope scope = RsiScope::Column);

// Accuracy grid of several models across environments, as produced by the
// experiment harness (rows = models, columns = environments).
struct ResultsMatrix {
  DenseMatrix a;
  std::vector<std::string> model_names;
  std::vector<std::string> environment_labels;
};

inline DenseMatrix rsi(const ResultsMatrix& results,
                       RsiScope scope = RsiScope::Column) {
  return rsi(results.a, scope);
}

// Empirical check of the first-order classification stability bound in its
// least-squares regime. Z1 and Z2 are least-squares solutions for (V, x)
// and (V + dV, x + dx); the bound compares
//   lhs = ||Z2 - Z1|| / ||Z1||
//   rhs = epsilon * (2 kappa2 / cos(theta) + tan(theta) kappa2^2)
// with epsilon = max(||dx||/||x||, ||dV||_2/||V||_2), kappa2 the condition
// number of V and sin(theta) the relative least-squares residual. The
// bound applies (admissible) when epsilon <= 1/kappa2 and sin(theta) != 1.
struct StabilityBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double epsilon = 0.0;
  double kappa2 = 0.0;
  double theta = 0.0;
  bool admissible = false;
};

StabilityBound stability_bound(const DenseMatrix& V, const Vector& x,
                               const Vector& dx, const DenseMatrix& dV);

}  // namespace pfsr
