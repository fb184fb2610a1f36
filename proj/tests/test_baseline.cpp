#include <doctest.h>

#include <Eigen/QR>
#include <cmath>
#include <random>

#include "pfsr/baseline.hpp"
#include "test_util.hpp"

using namespace pfsr;
using testutil::random_matrix;
using testutil::random_vector;

namespace {

DenseMatrix orthonormal_columns(Index rows, Index cols, std::mt19937_64& eng) {
  const DenseMatrix g = random_matrix(rows, cols, eng);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  return qr.householderQ() * DenseMatrix::Identity(rows, cols);
}

SolverConfig lasso_config(int iters) {
  SolverConfig cfg;
  cfg.max_iter = iters;
  return cfg;
}

double lasso_objective(const DenseMatrix& X, const Vector& y, double lambda,
                       const Vector& gamma) {
  return 0.5 * (X * gamma - y).squaredNorm() + lambda * gamma.lpNorm<1>();
}

}  // namespace

TEST_CASE("solve_src recovers an exact atom on an orthonormal dictionary") {
  std::mt19937_64 eng(71);
  const DenseMatrix x = orthonormal_columns(10, 6, eng);
  const Vector y = x.col(2);
  const double lambda = 1e-4;
  const Vector gamma = solve_src(x, y, lambda, lasso_config(5000));
  CHECK(gamma[2] == doctest::Approx(1.0 - lambda).epsilon(1e-6));
  for (Index i = 0; i < 6; ++i) {
    if (i != 2) CHECK(std::abs(gamma[i]) < 1e-8);
  }

  const SrcClassification cls =
      classify_src(x, {1, 1, 2, 2, 3, 3}, gamma, y);
  CHECK(cls.defined);
  CHECK(cls.label == 2);
  CHECK(cls.residuals[1] < 1e-3);
}

TEST_CASE("solve_src trivial limits") {
  std::mt19937_64 eng(72);
  const DenseMatrix x = random_matrix(8, 5, eng);
  CHECK(solve_src(x, Vector::Zero(8), 0.1, lasso_config(100)).isZero(0.0));

  const Vector y = random_vector(8, eng);
  const double huge = 10.0 * (x.transpose() * y).cwiseAbs().maxCoeff();
  CHECK(solve_src(x, y, huge, lasso_config(100)).isZero(0.0));

  CHECK_THROWS_AS(solve_src(x, Vector::Zero(7), 0.1, lasso_config(10)),
                  InvalidInput);
  CHECK_THROWS_AS(solve_src(x, y, 0.0, lasso_config(10)), InvalidParameter);
}

TEST_CASE("solve_src satisfies the lasso optimality conditions") {
  std::mt19937_64 eng(73);
  const DenseMatrix x = random_matrix(15, 8, eng);
  const Vector y = random_vector(15, eng);
  const double lambda = 0.1;
  const Vector gamma = solve_src(x, y, lambda, lasso_config(50000));
  const Vector corr = x.transpose() * (x * gamma - y);
  for (Index i = 0; i < gamma.size(); ++i) {
    if (gamma[i] == 0.0) {
      CHECK(std::abs(corr[i]) <= lambda + 1e-5);
    } else {
      CHECK(corr[i] ==
            doctest::Approx(-lambda * (gamma[i] > 0 ? 1.0 : -1.0))
                .epsilon(1e-5));
    }
  }
}

TEST_CASE("classify_src flags the all-zero coefficient vector") {
  std::mt19937_64 eng(74);
  const DenseMatrix x = random_matrix(6, 4, eng);
  const Vector y = random_vector(6, eng);
  const SrcClassification cls =
      classify_src(x, {1, 1, 2, 2}, Vector::Zero(4), y);
  CHECK_FALSE(cls.defined);
  CHECK(cls.label == kUnclassified);
  for (Index j = 0; j < 2; ++j) CHECK(cls.residuals[j] == y.norm());
}

TEST_CASE("classify_src single category and tie break") {
  std::mt19937_64 eng(75);
  const DenseMatrix x = random_matrix(6, 3, eng);
  Vector gamma(3);
  gamma << 0.5, 0.1, 0.2;
  const Vector y = random_vector(6, eng);
  CHECK(classify_src(x, {1, 1, 1}, gamma, y).label == 1);
}

TEST_CASE("classify_src label is invariant to positive rescaling") {
  std::mt19937_64 eng(76);
  const DenseMatrix x = random_matrix(8, 6, eng);
  const std::vector<int> labels{1, 1, 2, 2, 3, 3};
  const Vector gamma = random_vector(6, eng);
  const Vector y = random_vector(8, eng);
  const SrcClassification base = classify_src(x, labels, gamma, y);
  for (double t : {0.5, 3.0, 40.0}) {
    const SrcClassification scaled =
        classify_src(x, labels, Vector(t * gamma), Vector(t * y));
    CHECK(scaled.label == base.label);
  }
}

TEST_CASE("solve_src_plus_test with an empty pool equals solve_src") {
  std::mt19937_64 eng(77);
  const DenseMatrix x = random_matrix(8, 5, eng);
  const Vector y = random_vector(8, eng);
  const Vector plain = solve_src(x, y, 0.05, lasso_config(2000));
  const Vector plus = solve_src_plus_test(x, DenseMatrix(8, 0), y, 0.05,
                                          lasso_config(2000));
  CHECK(plain == plus);
}

TEST_CASE("solve_src_plus_test query exclusion") {
  std::mt19937_64 eng(78);
  // y is orthogonal to every atom except its own duplicate inside Y.
  const DenseMatrix frame = orthonormal_columns(10, 5, eng);
  const DenseMatrix x = frame.leftCols(3);
  DenseMatrix pool(10, 2);
  pool.col(0) = frame.col(3);
  pool.col(1) = frame.col(4);
  const Vector y = pool.col(1);

  const Vector kept = solve_src_plus_test(x, pool, y, 1e-3,
                                          lasso_config(2000), false);
  CHECK(kept[4] == doctest::Approx(1.0).epsilon(1e-2));

  const Vector excluded =
      solve_src_plus_test(x, pool, y, 1e-3, lasso_config(2000), true);
  CHECK(excluded[4] == 0.0);
  CHECK(excluded.cwiseAbs().maxCoeff() < 1e-8);  // nothing else can explain y
}

TEST_CASE("augmenting the dictionary never hurts the lasso objective") {
  std::mt19937_64 eng(79);
  const DenseMatrix x = random_matrix(9, 4, eng);
  const DenseMatrix pool = random_matrix(9, 3, eng);
  const Vector y = random_vector(9, eng);
  const double lambda = 0.05;

  const Vector plain = solve_src(x, y, lambda, lasso_config(30000));
  const Vector plus =
      solve_src_plus_test(x, pool, y, lambda, lasso_config(30000), false);

  DenseMatrix dict(9, 7);
  dict.leftCols(4) = x;
  dict.rightCols(3) = pool;
  Vector padded = Vector::Zero(7);
  padded.head(4) = plain;
  CHECK(lasso_objective(dict, y, lambda, plus) <=
        lasso_objective(dict, y, lambda, padded) + 1e-8);
}
