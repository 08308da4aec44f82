#include "adsel/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace adsel {

AffinityGraph build_affinity(const FeatureMatrix& x, int q, double sigma) {
    const Index n = x.sample_count();
    if (q < 1) throw ParameterError("graph neighbor count q must be >= 1");
    if (q >= n)
        throw ParameterError("graph neighbor count q=" + std::to_string(q) +
                             " must be smaller than the sample count n=" + std::to_string(n));

    Matrix d2(n, n);
    for (Index i = 0; i < n; ++i) {
        d2(i, i) = 0.0;
        for (Index j = i + 1; j < n; ++j) {
            const double v = (x.values.col(i) - x.values.col(j)).squaredNorm();
            d2(i, j) = v;
            d2(j, i) = v;
        }
    }

    // neighbor(i, j) = 1 iff sample i is among the q nearest of sample j,
    // self excluded, distance ties broken by ascending index
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> neighbor(n, n);
    neighbor.setZero();
    std::vector<Index> idx(static_cast<std::size_t>(n - 1));
    for (Index j = 0; j < n; ++j) {
        idx.clear();
        for (Index i = 0; i < n; ++i)
            if (i != j) idx.push_back(i);
        std::partial_sort(idx.begin(), idx.begin() + q, idx.end(), [&](Index a, Index b) {
            if (d2(a, j) != d2(b, j)) return d2(a, j) < d2(b, j);
            return a < b;
        });
        for (int t = 0; t < q; ++t) neighbor(idx[static_cast<std::size_t>(t)], j) = 1;
    }

    double used_sigma = sigma;
    if (used_sigma <= 0.0) {
        // auto rule: mean Euclidean distance over retained neighbor pairs
        double sum = 0.0;
        std::int64_t count = 0;
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                if (neighbor(i, j) || neighbor(j, i)) {
                    sum += std::sqrt(d2(i, j));
                    ++count;
                }
            }
        }
        used_sigma = count > 0 ? sum / static_cast<double>(count) : 0.0;
        if (used_sigma <= 0.0) used_sigma = 1.0;  // all retained pairs coincide
    }

    AffinityGraph g;
    g.sigma = used_sigma;
    g.q = q;
    g.S = Matrix::Zero(n, n);
    const double inv_s2 = 1.0 / (used_sigma * used_sigma);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (neighbor(i, j) || neighbor(j, i)) {
                const double w = std::exp(-d2(i, j) * inv_s2);
                g.S(i, j) = w;
                g.S(j, i) = w;
            }
        }
    }
    return g;
}

GraphLaplacian build_laplacian(const AffinityGraph& g) {
    GraphLaplacian lap;
    lap.degrees = g.S.rowwise().sum();
    lap.L = -g.S;
    lap.L.diagonal() += lap.degrees;
    return lap;
}

}  // namespace adsel
