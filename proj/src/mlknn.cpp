#include "adsel/mlknn.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace adsel {

namespace {

// Indices of the k nearest columns of `ref` to `query` by Euclidean distance,
// ties broken by ascending index. `skip` excludes one column (self).
std::vector<Index> k_nearest(const Matrix& ref, const Vector& query, int k, Index skip) {
    std::vector<Index> idx;
    idx.reserve(static_cast<std::size_t>(ref.cols()));
    for (Index i = 0; i < ref.cols(); ++i)
        if (i != skip) idx.push_back(i);

    std::vector<double> d2(static_cast<std::size_t>(ref.cols()));
    for (Index i : idx)
        d2[static_cast<std::size_t>(i)] = (ref.col(i) - query).squaredNorm();

    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](Index a, Index b) {
        const double da = d2[static_cast<std::size_t>(a)];
        const double db = d2[static_cast<std::size_t>(b)];
        if (da != db) return da < db;
        return a < b;
    });
    idx.resize(static_cast<std::size_t>(k));
    return idx;
}

}  // namespace

MLKnnModel mlknn_fit(const Matrix& features, const Matrix& labels, int k, double s) {
    const Index n = features.cols();
    const Index nl = labels.cols();
    if (labels.rows() != n)
        throw ParameterError("ml-knn: label rows must match training sample count");
    if (k < 1) throw ParameterError("ml-knn: k must be >= 1");
    if (k >= n)
        throw ParameterError("ml-knn: k=" + std::to_string(k) +
                             " must be smaller than the training sample count n=" +
                             std::to_string(n));
    if (!(s > 0.0)) throw ParameterError("ml-knn: smoothing must be positive");

    MLKnnModel model;
    model.k_neighbors = k;
    model.smoothing = s;
    model.train_features = features;
    model.train_labels = labels;

    model.priors.resize(nl);
    for (Index j = 0; j < nl; ++j)
        model.priors(j) = (s + labels.col(j).sum()) / (2.0 * s + static_cast<double>(n));

    // neighbor label counts per training sample (self excluded)
    Matrix counts(n, nl);
    for (Index i = 0; i < n; ++i) {
        const auto nn = k_nearest(features, features.col(i), k, i);
        for (Index j = 0; j < nl; ++j) {
            double c = 0.0;
            for (Index t : nn) c += labels(t, j);
            counts(i, j) = c;
        }
    }

    model.cond_pos = Matrix::Zero(nl, k + 1);
    model.cond_neg = Matrix::Zero(nl, k + 1);
    for (Index j = 0; j < nl; ++j) {
        Vector c_pos = Vector::Zero(k + 1);
        Vector c_neg = Vector::Zero(k + 1);
        for (Index i = 0; i < n; ++i) {
            const auto c = static_cast<Index>(counts(i, j));
            if (labels(i, j) == 1.0)
                c_pos(c) += 1.0;
            else
                c_neg(c) += 1.0;
        }
        const double denom_pos = s * (k + 1) + c_pos.sum();
        const double denom_neg = s * (k + 1) + c_neg.sum();
        for (Index c = 0; c <= k; ++c) {
            model.cond_pos(j, c) = (s + c_pos(c)) / denom_pos;
            model.cond_neg(j, c) = (s + c_neg(c)) / denom_neg;
        }
    }
    return model;
}

MLKnnModel mlknn_fit(const Dataset& train, const std::vector<Index>& selected, int k, double s) {
    Matrix sub(static_cast<Index>(selected.size()), train.sample_count());
    for (std::size_t r = 0; r < selected.size(); ++r)
        sub.row(static_cast<Index>(r)) = train.features.values.row(selected[r]);
    return mlknn_fit(sub, train.labels.values, k, s);
}

PredictionResult mlknn_predict(const MLKnnModel& model, const Matrix& test_features) {
    if (test_features.rows() != model.train_features.rows())
        throw ParameterError("ml-knn: test feature count " +
                             std::to_string(test_features.rows()) +
                             " does not match model feature count " +
                             std::to_string(model.train_features.rows()));

    const Index m = test_features.cols();
    const Index nl = model.train_labels.cols();
    PredictionResult out;
    out.binary.resize(m, nl);
    out.confidence.resize(m, nl);

    for (Index i = 0; i < m; ++i) {
        const auto nn = k_nearest(model.train_features, test_features.col(i),
                                  model.k_neighbors, /*skip=*/-1);
        for (Index j = 0; j < nl; ++j) {
            Index c = 0;
            for (Index t : nn) c += model.train_labels(t, j) == 1.0 ? 1 : 0;
            const double post_pos = model.priors(j) * model.cond_pos(j, c);
            const double post_neg = (1.0 - model.priors(j)) * model.cond_neg(j, c);
            out.binary(i, j) = post_pos >= post_neg ? 1.0 : 0.0;
            out.confidence(i, j) = post_pos / (post_pos + post_neg);
        }
    }
    return out;
}

}  // namespace adsel
