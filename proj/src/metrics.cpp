#include "adsel/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace adsel {

namespace {

bool truthy(double v) { return v > 0.5; }

// A sample is eligible for the ranking metrics iff its label set is neither
// empty nor full.
bool eligible(const Matrix& truth, Index i) {
    Index rel = 0;
    for (Index j = 0; j < truth.cols(); ++j) rel += truthy(truth(i, j)) ? 1 : 0;
    return rel >= 1 && rel <= truth.cols() - 1;
}

// Descending rank of label j within row i; ties broken by ascending index.
Index rank_of(const Matrix& conf, Index i, Index j) {
    Index rank = 1;
    for (Index l = 0; l < conf.cols(); ++l) {
        if (l == j) continue;
        if (conf(i, l) > conf(i, j) || (conf(i, l) == conf(i, j) && l < j)) ++rank;
    }
    return rank;
}

void check_shapes(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ParameterError(std::string(what) + ": shape mismatch");
}

}  // namespace

double hamming_loss(const Matrix& pred_binary, const Matrix& truth) {
    check_shapes(pred_binary, truth, "hamming_loss");
    Index mismatches = 0;
    for (Index i = 0; i < truth.rows(); ++i)
        for (Index j = 0; j < truth.cols(); ++j)
            if (truthy(pred_binary(i, j)) != truthy(truth(i, j))) ++mismatches;
    return static_cast<double>(mismatches) /
           static_cast<double>(truth.rows() * truth.cols());
}

double ranking_loss(const Matrix& conf, const Matrix& truth, Index* skipped) {
    check_shapes(conf, truth, "ranking_loss");
    double total = 0.0;
    Index used = 0, skip = 0;
    for (Index i = 0; i < truth.rows(); ++i) {
        if (!eligible(truth, i)) {
            ++skip;
            continue;
        }
        double bad = 0.0;
        Index pairs = 0;
        for (Index r = 0; r < truth.cols(); ++r) {
            if (!truthy(truth(i, r))) continue;
            for (Index s = 0; s < truth.cols(); ++s) {
                if (truthy(truth(i, s))) continue;
                ++pairs;
                if (conf(i, r) < conf(i, s))
                    bad += 1.0;
                else if (conf(i, r) == conf(i, s))
                    bad += 0.5;
            }
        }
        total += bad / static_cast<double>(pairs);
        ++used;
    }
    if (skipped) *skipped = skip;
    if (used == 0) throw MetricError("ranking loss undefined: no eligible samples");
    return total / static_cast<double>(used);
}

double coverage(const Matrix& conf, const Matrix& truth, Index* skipped) {
    check_shapes(conf, truth, "coverage");
    double total = 0.0;
    Index used = 0, skip = 0;
    for (Index i = 0; i < truth.rows(); ++i) {
        if (!eligible(truth, i)) {
            ++skip;
            continue;
        }
        Index worst = 0;
        for (Index j = 0; j < truth.cols(); ++j)
            if (truthy(truth(i, j))) worst = std::max(worst, rank_of(conf, i, j));
        total += static_cast<double>(worst - 1);
        ++used;
    }
    if (skipped) *skipped = skip;
    if (used == 0) throw MetricError("coverage undefined: no eligible samples");
    return total / static_cast<double>(used);
}

double average_precision(const Matrix& conf, const Matrix& truth, Index* skipped) {
    check_shapes(conf, truth, "average_precision");
    double total = 0.0;
    Index used = 0, skip = 0;
    for (Index i = 0; i < truth.rows(); ++i) {
        if (!eligible(truth, i)) {
            ++skip;
            continue;
        }
        double sample_ap = 0.0;
        Index rel = 0;
        for (Index j = 0; j < truth.cols(); ++j) {
            if (!truthy(truth(i, j))) continue;
            ++rel;
            const Index rj = rank_of(conf, i, j);
            Index rel_at_or_above = 0;
            for (Index l = 0; l < truth.cols(); ++l)
                if (truthy(truth(i, l)) && rank_of(conf, i, l) <= rj) ++rel_at_or_above;
            sample_ap += static_cast<double>(rel_at_or_above) / static_cast<double>(rj);
        }
        total += sample_ap / static_cast<double>(rel);
        ++used;
    }
    if (skipped) *skipped = skip;
    if (used == 0) throw MetricError("average precision undefined: no eligible samples");
    return total / static_cast<double>(used);
}

MetricReport evaluate_all(const PredictionResult& pred, const Matrix& truth) {
    MetricReport rep;
    rep.hamming_loss = hamming_loss(pred.binary, truth);
    Index skipped = 0;
    rep.ranking_loss = ranking_loss(pred.confidence, truth, &skipped);
    rep.coverage = coverage(pred.confidence, truth);
    rep.average_precision = average_precision(pred.confidence, truth);
    rep.skipped_samples = skipped;  // the three ranking metrics share eligibility
    return rep;
}

FriedmanResult friedman_test(const Matrix& scores, bool higher_is_better,
                             double critical_value) {
    const Index k = scores.rows();  // methods
    const Index n = scores.cols();  // settings
    if (k < 2) throw ParameterError("friedman: need at least 2 methods");
    if (n < 2) throw ParameterError("friedman: need at least 2 settings");

    Vector rank_sum = Vector::Zero(k);
    std::vector<Index> idx(static_cast<std::size_t>(k));
    for (Index c = 0; c < n; ++c) {
        std::iota(idx.begin(), idx.end(), Index{0});
        std::sort(idx.begin(), idx.end(), [&](Index a, Index b) {
            if (scores(a, c) != scores(b, c))
                return higher_is_better ? scores(a, c) > scores(b, c)
                                        : scores(a, c) < scores(b, c);
            return a < b;
        });
        // average ranks across tied blocks
        Index pos = 0;
        while (pos < k) {
            Index end = pos;
            while (end + 1 < k && scores(idx[static_cast<std::size_t>(end + 1)], c) ==
                                      scores(idx[static_cast<std::size_t>(pos)], c))
                ++end;
            const double avg = static_cast<double>(pos + 1 + end + 1) / 2.0;
            for (Index t = pos; t <= end; ++t)
                rank_sum(idx[static_cast<std::size_t>(t)]) += avg;
            pos = end + 1;
        }
    }

    FriedmanResult res;
    res.mean_ranks = rank_sum / static_cast<double>(n);
    res.critical_value = critical_value;

    const double kk = static_cast<double>(k);
    const double nn = static_cast<double>(n);
    const double sum_r2 = res.mean_ranks.squaredNorm();
    res.chi_square = 12.0 * nn / (kk * (kk + 1.0)) *
                     (sum_r2 - kk * (kk + 1.0) * (kk + 1.0) / 4.0);

    const double denom = nn * (kk - 1.0) - res.chi_square;
    if (res.chi_square <= 0.0)
        res.f_statistic = 0.0;
    else if (denom <= 0.0)
        res.f_statistic = std::numeric_limits<double>::infinity();  // perfectly consistent ranks
    else
        res.f_statistic = (nn - 1.0) * res.chi_square / denom;

    res.reject = res.f_statistic > critical_value;
    return res;
}

}  // namespace adsel
