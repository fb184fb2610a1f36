#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "pfsr/types.hpp"

namespace pfsr {

// Which representation model a ProblemSpec describes:
//   LRS : nuclear + l1 on the coefficients, l1 on the error matrix
//   S   : l1 on the coefficients, exact data constraint
//   LR  : nuclear on the coefficients, l1 on the error matrix
enum class Model { LRS, S, LR };

const char* model_name(Model m);
Model parse_model(std::string_view name);  // "lrs" | "s" | "lr"

inline constexpr double kDefaultLambda1 = 10.0;
inline constexpr double kDefaultLambda2 = 0.09;
inline constexpr double kDefaultDelta = 0.09;

// Labeled samples (columns grouped by category, labels nondecreasing)
// plus the unlabeled pool sharing the same feature dimension.
struct Dataset {
  DenseMatrix X;                    // d x s_c
  std::vector<int> labels;          // length s_c, values 1..c
  DenseMatrix Y;                    // d x m
  int categories = 0;               // c
  std::vector<int> category_sizes;  // n_j, length c
};

// Validates the pieces and fills in the derived category counts.
Dataset make_dataset(DenseMatrix X, std::vector<int> labels, DenseMatrix Y);

// Per-category counts of a nondecreasing 1..c label list.
std::vector<int> category_sizes(const std::vector<int>& labels);

// One solvable instance: every labeled sample is expressed over the
// dictionary of all other samples, so V stacks X's columns first and the
// zero-diagonal constraint removes each column from its own representation.
struct ProblemSpec {
  DenseMatrix V;          // d x (s_c + m), columns [X | Y]
  DenseMatrix X;          // d x s_c
  Index n_labeled = 0;    // s_c
  Index n_unlabeled = 0;  // m
  Model model = Model::LRS;
  double lambda1 = kDefaultLambda1;  // weight on ||A||_1
  double lambda2 = kDefaultLambda2;  // weight on ||E||_1
  double delta = kDefaultDelta;      // weight on ||E||_1 for the LR model
};

ProblemSpec build_dictionary(const Dataset& ds);

// Sum of singular values.
double nuclear_norm(const DenseMatrix& m);

// Model objective at the triple (Z, A, E):
//   LRS : ||Z||_* + lambda1 ||A||_1 + lambda2 ||E||_1
//   S   : ||Z||_1
//   LR  : ||Z||_* + delta ||E||_1
double objective_value(const DenseMatrix& Z, const DenseMatrix& A,
                       const DenseMatrix& E, const ProblemSpec& p);

// Relative constraint violations, guarded against zero denominators:
//   r1 = ||V Z + E - X||_F / max(||X||_F, 1)
//   r2 = ||Z - A||_F / max(||Z||_F, 1)
std::pair<double, double> feasibility_residuals(const DenseMatrix& Z,
                                                const DenseMatrix& A,
                                                const DenseMatrix& E,
                                                const ProblemSpec& p);

}  // namespace pfsr
