#pragma once

#include "adsel/mlknn.hpp"
#include "adsel/types.hpp"

namespace adsel {

// Instance-oriented multi-label metrics. The three ranking metrics skip
// samples whose label set is empty or full; skipped counts are reported.
struct MetricReport {
    double hamming_loss = 0.0;
    double ranking_loss = 0.0;
    double coverage = 0.0;
    double average_precision = 0.0;
    Index skipped_samples = 0;
};

double hamming_loss(const Matrix& pred_binary, const Matrix& truth);

// Fraction of (relevant, irrelevant) pairs ordered wrongly, ties half credit;
// averaged over eligible samples. Throws MetricError when none are eligible.
double ranking_loss(const Matrix& conf, const Matrix& truth, Index* skipped = nullptr);

// Mean over eligible samples of (worst rank of a relevant label) - 1,
// ranks descending from 1 by confidence.
double coverage(const Matrix& conf, const Matrix& truth, Index* skipped = nullptr);

double average_precision(const Matrix& conf, const Matrix& truth, Index* skipped = nullptr);

MetricReport evaluate_all(const PredictionResult& pred, const Matrix& truth);

// Friedman rank test with the Iman-Davenport correction.
struct FriedmanResult {
    double chi_square = 0.0;   // chi^2_F
    double f_statistic = 0.0;  // F_F
    double critical_value = 0.0;
    bool reject = false;
    Vector mean_ranks;  // per method
};

// scores: methods x settings. Methods are ranked within each setting
// (average ranks on ties); equality is rejected iff F_F > critical_value.
FriedmanResult friedman_test(const Matrix& scores, bool higher_is_better,
                             double critical_value);

}  // namespace adsel
