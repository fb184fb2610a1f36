#include <doctest.h>

#include <Eigen/SVD>

#include "pfsr/synth.hpp"

using namespace pfsr;

TEST_CASE("generate is deterministic in the seed") {
  SynthSpec spec;
  const SyntheticDataset a = generate(spec);
  const SyntheticDataset b = generate(spec);
  CHECK(a.data.X == b.data.X);
  CHECK(a.data.Y == b.data.Y);
  CHECK(a.data.labels == b.data.labels);
  CHECK(a.unlabeled_truth == b.unlabeled_truth);

  SynthSpec other = spec;
  other.seed = 43;
  CHECK(generate(other).data.X != a.data.X);
}

TEST_CASE("generate honors requested counts and ordering") {
  SynthSpec spec;
  spec.categories = 4;
  spec.labeled_per_category = 3;
  spec.unlabeled_per_category = 2;
  spec.ambient_dim = 20;
  const SyntheticDataset data = generate(spec);
  CHECK(data.data.X.cols() == 12);
  CHECK(data.data.Y.cols() == 8);
  CHECK(data.data.categories == 4);
  CHECK(data.data.category_sizes == std::vector<int>{3, 3, 3, 3});
  CHECK(data.unlabeled_truth ==
        std::vector<int>{1, 1, 2, 2, 3, 3, 4, 4});
  for (Index j = 0; j < data.data.X.cols(); ++j) {
    CHECK(data.data.X.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("noiseless samples have no out-of-subspace energy") {
  SynthSpec spec;  // noise_sigma = 0
  const SyntheticDataset data = generate(spec);
  for (int cat = 1; cat <= spec.categories; ++cat) {
    DenseMatrix block(spec.ambient_dim,
                      spec.labeled_per_category + spec.unlabeled_per_category);
    Index col = 0;
    for (size_t i = 0; i < data.data.labels.size(); ++i) {
      if (data.data.labels[i] == cat) {
        block.col(col++) = data.data.X.col(static_cast<Index>(i));
      }
    }
    for (size_t i = 0; i < data.unlabeled_truth.size(); ++i) {
      if (data.unlabeled_truth[i] == cat) {
        block.col(col++) = data.data.Y.col(static_cast<Index>(i));
      }
    }
    REQUIRE(col == block.cols());
    Eigen::JacobiSVD<DenseMatrix> svd(block);
    const Vector s = svd.singularValues();
    CHECK(s[spec.subspace_dim] < 1e-10 * s[0]);
  }

  SUBCASE("union of blocks spans the full construction dimension") {
    DenseMatrix all(spec.ambient_dim,
                    data.data.X.cols() + data.data.Y.cols());
    all.leftCols(data.data.X.cols()) = data.data.X;
    all.rightCols(data.data.Y.cols()) = data.data.Y;
    Eigen::JacobiSVD<DenseMatrix> svd(all);
    const Vector s = svd.singularValues();
    const Index total = spec.categories * spec.subspace_dim;
    CHECK(s[total - 1] > 1e-8 * s[0]);   // independent subspaces
    CHECK(s[total] < 1e-10 * s[0]);      // nothing beyond them
  }
}

TEST_CASE("noise perturbs samples off the subspaces") {
  SynthSpec spec;
  spec.noise_sigma = 0.3;
  const SyntheticDataset data = generate(spec);
  DenseMatrix block(spec.ambient_dim, spec.labeled_per_category);
  for (int i = 0; i < spec.labeled_per_category; ++i) {
    block.col(i) = data.data.X.col(i);
  }
  Eigen::JacobiSVD<DenseMatrix> svd(block);
  CHECK(svd.singularValues()[spec.subspace_dim] >
        1e-4 * svd.singularValues()[0]);
}

TEST_CASE("generate rejects an infeasible SynthSpec") {
  SynthSpec spec;
  spec.categories = 5;
  spec.subspace_dim = 4;
  spec.ambient_dim = 10;  // 5 * 4 > 10
  CHECK_THROWS_AS(generate(spec), InvalidParameter);

  SynthSpec bad;
  bad.labeled_per_category = 0;
  CHECK_THROWS_AS(generate(bad), InvalidParameter);
  bad = SynthSpec{};
  bad.noise_sigma = -1.0;
  CHECK_THROWS_AS(generate(bad), InvalidParameter);
}
