#pragma once

#include <cstdint>
#include <vector>

#include "pfsr/model.hpp"

namespace pfsr {

// Union-of-independent-subspaces generator. Each category owns a disjoint
// block of columns of one random orthogonal frame; samples are random
// combinations within the block plus optional isotropic noise, normalized
// to unit l2 norm.
//
// All randomness comes from mt19937_64 driven through an explicit
// Box-Muller transform, so the same seed reproduces the same dataset
// bit-for-bit on any platform.
struct SynthSpec {
  int categories = 3;
  int subspace_dim = 2;
  int ambient_dim = 30;
  int labeled_per_category = 6;
  int unlabeled_per_category = 4;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;
};

struct SyntheticDataset {
  Dataset data;
  std::vector<int> unlabeled_truth;  // hidden labels of Y's columns
};

SyntheticDataset generate(const SynthSpec& spec);

}  // namespace pfsr
