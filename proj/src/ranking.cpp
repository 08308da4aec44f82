#include "adsel/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace adsel {

FeatureRanking rank_features(const Matrix& w) {
    const Index d = w.rows();
    FeatureRanking r;
    r.scores.resize(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) r.scores[static_cast<std::size_t>(i)] = w.row(i).norm();

    r.order.resize(static_cast<std::size_t>(d));
    std::iota(r.order.begin(), r.order.end(), Index{0});
    std::sort(r.order.begin(), r.order.end(), [&](Index a, Index b) {
        const double sa = r.scores[static_cast<std::size_t>(a)];
        const double sb = r.scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;  // ties to the lower feature index
    });
    return r;
}

std::vector<Index> select_top(const FeatureRanking& r, double fraction) {
    const Index d = static_cast<Index>(r.order.size());
    if (!(fraction > 0.0) || fraction > 1.0)
        throw ParameterError("budget fraction must lie in (0, 1]");
    // nudge before ceil so that exact products like 0.1 * 100 stay exact
    Index count = static_cast<Index>(std::ceil(fraction * static_cast<double>(d) - 1e-9));
    count = std::clamp<Index>(count, 1, d);
    return {r.order.begin(), r.order.begin() + count};
}

std::vector<Index> select_top(const FeatureRanking& r, Index count) {
    const Index d = static_cast<Index>(r.order.size());
    if (count < 1 || count > d)
        throw ParameterError("budget count must lie in [1, " + std::to_string(d) + "]");
    return {r.order.begin(), r.order.begin() + count};
}

}  // namespace adsel
