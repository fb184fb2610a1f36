#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace pfsr {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Categories are 1-based everywhere; 0 marks a sample the classifier
// could not assign (written as '?' in prediction files).
inline constexpr int kUnclassified = 0;

class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pfsr
