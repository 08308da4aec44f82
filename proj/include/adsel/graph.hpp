#pragma once

#include "adsel/dataset.hpp"
#include "adsel/types.hpp"

namespace adsel {

// q-nearest-neighbor heat-kernel affinity over sample columns.
// S is symmetric with zero diagonal; S_ij > 0 iff i is among the q nearest
// neighbors of j or vice versa.
struct AffinityGraph {
    Matrix S;      // n x n
    double sigma;  // bandwidth actually used (resolved when auto)
    int q;
};

struct GraphLaplacian {
    Matrix L;        // degree matrix minus affinity
    Vector degrees;  // row sums of S
};

// sigma <= 0 selects the auto rule: mean Euclidean distance over all retained
// neighbor pairs. Neighbor ties are broken by ascending sample index.
AffinityGraph build_affinity(const FeatureMatrix& x, int q, double sigma = 0.0);

GraphLaplacian build_laplacian(const AffinityGraph& g);

}  // namespace adsel
