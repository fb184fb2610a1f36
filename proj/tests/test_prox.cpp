#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <random>

#include "pfsr/model.hpp"
#include "pfsr/prox.hpp"
#include "test_util.hpp"

using namespace pfsr;
using testutil::random_matrix;
using testutil::random_vector;

TEST_CASE("soft_threshold closed form") {
  DenseMatrix m(1, 1);
  m << 1.2;
  CHECK(soft_threshold(m, 0.5)(0, 0) == 1.2 - 0.5);

  DenseMatrix m2(1, 2);
  m2 << -0.3, 0.8;
  const DenseMatrix out = soft_threshold(m2, 0.5);
  CHECK(out(0, 0) == 0.0);
  CHECK(out(0, 1) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("soft_threshold is the identity at tau = 0") {
  std::mt19937_64 eng(11);
  const DenseMatrix m = random_matrix(5, 7, eng);
  CHECK(soft_threshold(m, 0.0) == m);
}

TEST_CASE("soft_threshold input validation") {
  DenseMatrix m(1, 1);
  m << 1.0;
  CHECK_THROWS_AS(soft_threshold(m, -0.1), InvalidParameter);
  m(0, 0) = std::nan("");
  CHECK_THROWS_AS(soft_threshold(m, 0.1), InvalidInput);
  m(0, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(soft_threshold(m, 0.1), InvalidInput);
}

TEST_CASE("soft_threshold satisfies the proximal subgradient condition") {
  std::mt19937_64 eng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix m = random_matrix(6, 5, eng);
    const double tau = 0.05 + 0.5 * testutil::uniform01(eng);
    const DenseMatrix w = soft_threshold(m, tau);
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        const double g = (m(i, j) - w(i, j)) / tau;
        if (w(i, j) != 0.0) {
          CHECK(g == doctest::Approx(w(i, j) > 0 ? 1.0 : -1.0).epsilon(1e-12));
        } else {
          CHECK(std::abs(g) <= 1.0 + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("svt shrinks the diagonal of a nonnegative diagonal matrix") {
  DenseMatrix m = DenseMatrix::Zero(3, 3);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  m(2, 2) = 0.3;
  const DenseMatrix out = svt(m, 0.5);
  DenseMatrix expected = DenseMatrix::Zero(3, 3);
  expected(0, 0) = 1.5;
  expected(1, 1) = 0.5;
  CHECK((out - expected).norm() < 1e-12);
}

TEST_CASE("svt at tau = 0 reconstructs the input") {
  std::mt19937_64 eng(13);
  const DenseMatrix m = random_matrix(6, 4, eng);
  CHECK((svt(m, 0.0) - m).norm() < 1e-10);
}

TEST_CASE("svt output singular values equal max(sigma - tau, 0)") {
  std::mt19937_64 eng(14);
  for (int trial = 0; trial < 25; ++trial) {
    const Index rows = 2 + static_cast<Index>(eng() % 15);
    const Index cols = 2 + static_cast<Index>(eng() % 12);
    const DenseMatrix m = random_matrix(rows, cols, eng);
    const double tau = 0.5 * testutil::uniform01(eng);
    const DenseMatrix out = svt(m, tau);

    Eigen::JacobiSVD<DenseMatrix> in_svd(m);
    Eigen::JacobiSVD<DenseMatrix> out_svd(out);
    const Vector expected =
        in_svd.singularValues().unaryExpr([tau](double s) {
          return std::max(s - tau, 0.0);
        });
    CHECK((out_svd.singularValues() - expected).cwiseAbs().maxCoeff() < 1e-8);
    int rank_in = 0, rank_out = 0;
    for (Index i = 0; i < expected.size(); ++i) {
      if (in_svd.singularValues()[i] > 1e-12) ++rank_in;
      if (out_svd.singularValues()[i] > 1e-12) ++rank_out;
    }
    CHECK(rank_out <= rank_in);
  }
}

TEST_CASE("svt minimizes tau*||W||_* + 0.5*||W - m||_F^2 locally") {
  std::mt19937_64 eng(15);
  const double tau = 0.2;
  const DenseMatrix m = random_matrix(4, 3, eng);
  const DenseMatrix w = svt(m, tau);
  const double f_star = tau * nuclear_norm(w) + 0.5 * (w - m).squaredNorm();
  for (int p = 0; p < 200; ++p) {
    const double scale = 1e-3 + 0.3 * testutil::uniform01(eng);
    const DenseMatrix probe = w + scale * random_matrix(4, 3, eng);
    const double f =
        tau * nuclear_norm(probe) + 0.5 * (probe - m).squaredNorm();
    CHECK(f >= f_star - 1e-12);
  }
}

TEST_CASE("zero_diagonal_project") {
  DenseMatrix m(2, 2);
  m << 1, 2, 3, 4;
  DenseMatrix expected(2, 2);
  expected << 0, 2, 3, 0;
  CHECK(zero_diagonal_project(m, 2) == expected);

  SUBCASE("idempotent") {
    const DenseMatrix once = zero_diagonal_project(m, 2);
    CHECK(zero_diagonal_project(once, 2) == once);
  }

  SUBCASE("only the labeled block is touched") {
    DenseMatrix tall(3, 2);
    tall << 1, 2, 3, 4, 5, 6;
    const DenseMatrix out = zero_diagonal_project(tall, 2);
    CHECK(out(0, 0) == 0.0);
    CHECK(out(1, 1) == 0.0);
    CHECK(out(2, 0) == 5.0);
    CHECK(out(2, 1) == 6.0);
  }

  SUBCASE("n_diag beyond the square block is rejected") {
    CHECK_THROWS_AS(zero_diagonal_project(m, 3), InvalidParameter);
  }
}

TEST_CASE("zero_diagonal_project is a Euclidean projection") {
  std::mt19937_64 eng(16);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix m = random_matrix(5, 4, eng);
    const DenseMatrix feasible =
        zero_diagonal_project(random_matrix(5, 4, eng), 4);
    const DenseMatrix projected = zero_diagonal_project(m, 4);
    CHECK((projected - feasible).norm() <= (m - feasible).norm() + 1e-14);
  }
}

TEST_CASE("spectral_norm on diagonal and identity matrices") {
  DenseMatrix m = DenseMatrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  CHECK(spectral_norm(m) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(spectral_norm(DenseMatrix::Identity(4, 4)) ==
        doctest::Approx(1.0).epsilon(1e-8));
  CHECK(spectral_norm(DenseMatrix::Zero(3, 2)) == 0.0);
}

TEST_CASE("spectral_norm matches a full SVD") {
  std::mt19937_64 eng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix m = random_matrix(5, 4, eng);
    Eigen::JacobiSVD<DenseMatrix> svd(m);
    CHECK(spectral_norm(m) ==
          doctest::Approx(svd.singularValues()[0]).epsilon(1e-8));
  }
}

TEST_CASE("spectral_norm dominates ||m v|| over random unit vectors") {
  std::mt19937_64 eng(18);
  const DenseMatrix m = random_matrix(6, 5, eng);
  const double sigma = spectral_norm(m);
  for (int trial = 0; trial < 100; ++trial) {
    Vector v = random_vector(5, eng);
    v.normalize();
    CHECK((m * v).norm() <= sigma * (1.0 + 1e-8));
  }
}
