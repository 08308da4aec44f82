#pragma once

#include <cstdint>
#include <vector>

#include "adsel/dataset.hpp"
#include "adsel/types.hpp"

namespace adsel {

// Pairwise feature redundancy: squared cosine similarity between centered
// feature rows. Symmetric, entries in [0,1], unit diagonal for non-constant
// features. Rows/columns of constant features are zeroed and flagged.
struct RedundancyMatrix {
    Matrix A;  // d x d
    std::vector<std::uint8_t> constant_features;  // 1 where the centered norm vanishes
};

RedundancyMatrix build_redundancy(const FeatureMatrix& x);

}  // namespace adsel
