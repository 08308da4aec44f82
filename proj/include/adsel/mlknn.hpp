#pragma once

#include <vector>

#include "adsel/dataset.hpp"
#include "adsel/types.hpp"

namespace adsel {

// Bayesian multi-label k-nearest-neighbor classifier with Laplace-smoothed
// priors and neighbor-count conditionals.
struct MLKnnModel {
    int k_neighbors = 10;
    double smoothing = 1.0;
    Matrix train_features;  // selected features only, f x n_train
    Matrix train_labels;    // n_train x k
    Vector priors;          // P(H_j), per label
    Matrix cond_pos;        // k x (k_neighbors+1): P(C | H_j)
    Matrix cond_neg;        // k x (k_neighbors+1): P(C | not H_j)
};

struct PredictionResult {
    Matrix binary;      // n_test x k in {0,1}
    Matrix confidence;  // n_test x k posteriors of relevance, in [0,1]
};

MLKnnModel mlknn_fit(const Matrix& features, const Matrix& labels,
                     int k = 10, double s = 1.0);

// Convenience overload restricting the dataset to a feature subset.
MLKnnModel mlknn_fit(const Dataset& train, const std::vector<Index>& selected,
                     int k = 10, double s = 1.0);

PredictionResult mlknn_predict(const MLKnnModel& model, const Matrix& test_features);

}  // namespace adsel
