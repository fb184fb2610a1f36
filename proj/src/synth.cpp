#include "pfsr/synth.hpp"

#include <Eigen/QR>
#include <cmath>
#include <random>

namespace pfsr {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Standard-normal stream with a fixed cross-platform bit pattern:
// mt19937_64 words mapped to 53-bit uniforms, then Box-Muller.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = ((engine_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = (engine_() >> 11) * 0x1.0p-53;        // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  void fill(DenseMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i < m.rows(); ++i) m(i, j) = next();
    }
  }

  Vector vector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = next();
    return v;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Vector sample_column(const Eigen::Ref<const DenseMatrix>& basis,
                     double noise_sigma, GaussianStream& g) {
  Vector col = basis * g.vector(basis.cols());
  if (noise_sigma > 0.0) {
    col += noise_sigma * g.vector(basis.rows());
  }
  const double n = col.norm();
  if (n == 0.0) {
    throw NumericalFailure("generate: drew a zero sample");
  }
  return col / n;
}

}  // namespace

SyntheticDataset generate(const SynthSpec& spec) {
  if (spec.categories < 1 || spec.subspace_dim < 1 ||
      spec.labeled_per_category < 1 || spec.unlabeled_per_category < 0 ||
      spec.noise_sigma < 0.0) {
    throw InvalidParameter("generate: counts must be positive and noise >= 0");
  }
  if (spec.categories * spec.subspace_dim > spec.ambient_dim) {
    throw InvalidParameter(
        "generate: categories * subspace_dim exceeds the ambient dimension");
  }

  const Index d = spec.ambient_dim;
  const Index total_dim = spec.categories * spec.subspace_dim;
  GaussianStream g(spec.seed);

  // Disjoint orthonormal blocks of one random frame give mutually
  // independent category subspaces.
  DenseMatrix raw(d, total_dim);
  g.fill(raw);
  Eigen::HouseholderQR<DenseMatrix> qr(raw);
  DenseMatrix frame = qr.householderQ() * DenseMatrix::Identity(d, total_dim);
  for (Index j = 0; j < total_dim; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) frame.col(j) = -frame.col(j);
  }

  const Index s_c =
      static_cast<Index>(spec.categories) * spec.labeled_per_category;
  const Index m =
      static_cast<Index>(spec.categories) * spec.unlabeled_per_category;
  DenseMatrix X(d, s_c);
  DenseMatrix Y(d, m);
  std::vector<int> labels;
  labels.reserve(static_cast<size_t>(s_c));
  std::vector<int> truth;
  truth.reserve(static_cast<size_t>(m));

  Index xj = 0;
  for (int cat = 0; cat < spec.categories; ++cat) {
    const auto basis =
        frame.middleCols(Index(cat) * spec.subspace_dim, spec.subspace_dim);
    for (int i = 0; i < spec.labeled_per_category; ++i, ++xj) {
      X.col(xj) = sample_column(basis, spec.noise_sigma, g);
      labels.push_back(cat + 1);
    }
  }
  Index yj = 0;
  for (int cat = 0; cat < spec.categories; ++cat) {
    const auto basis =
        frame.middleCols(Index(cat) * spec.subspace_dim, spec.subspace_dim);
    for (int i = 0; i < spec.unlabeled_per_category; ++i, ++yj) {
      Y.col(yj) = sample_column(basis, spec.noise_sigma, g);
      truth.push_back(cat + 1);
    }
  }

  SyntheticDataset out;
  out.data = make_dataset(std::move(X), std::move(labels), std::move(Y));
  out.unlabeled_truth = std::move(truth);
  return out;
}

}  // namespace pfsr
