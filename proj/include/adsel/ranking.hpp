#pragma once

#include <vector>

#include "adsel/types.hpp"

namespace adsel {

// Feature ranking by row norms of the projection matrix.
// order[0] is the strongest feature; ties go to the lower feature index.
struct FeatureRanking {
    std::vector<Index> order;    // permutation of 0..d-1, best first
    std::vector<double> scores;  // scores[i] = ||W row i||_2, indexed by feature
};

FeatureRanking rank_features(const Matrix& w);

// First ceil(fraction * d) ranked indices; fraction in (0, 1].
std::vector<Index> select_top(const FeatureRanking& r, double fraction);

// First `count` ranked indices; count in [1, d].
std::vector<Index> select_top(const FeatureRanking& r, Index count);

}  // namespace adsel
