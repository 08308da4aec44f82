#include "adsel/redundancy.hpp"

#include <cmath>

namespace adsel {

RedundancyMatrix build_redundancy(const FeatureMatrix& x) {
    const Index d = x.feature_count();
    const Index n = x.sample_count();
    if (n < 2) throw ParameterError("redundancy needs at least 2 samples");

    Matrix centered(d, n);
    Vector norms(d);
    RedundancyMatrix out;
    out.constant_features.assign(static_cast<std::size_t>(d), 0);
    for (Index i = 0; i < d; ++i) {
        const double mean = x.values.row(i).mean();
        centered.row(i) = x.values.row(i).array() - mean;
        norms(i) = centered.row(i).norm();
        const double scale = std::max(1.0, x.values.row(i).cwiseAbs().maxCoeff());
        if (norms(i) <= 1e-12 * scale) out.constant_features[static_cast<std::size_t>(i)] = 1;
    }

    out.A = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        if (out.constant_features[static_cast<std::size_t>(i)]) continue;
        out.A(i, i) = 1.0;
        for (Index j = i + 1; j < d; ++j) {
            if (out.constant_features[static_cast<std::size_t>(j)]) continue;
            const double c = centered.row(i).dot(centered.row(j)) / (norms(i) * norms(j));
            const double a = c * c;  // computed once, mirrored
            out.A(i, j) = a;
            out.A(j, i) = a;
        }
    }
    return out;
}

}  // namespace adsel
