#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "adsel/dataset.hpp"
#include "adsel/metrics.hpp"
#include "adsel/solver.hpp"
#include "adsel/types.hpp"

namespace adsel {

struct ExperimentConfig {
    std::vector<double> missing_ratios = {0.1, 0.2, 0.3, 0.4, 0.5};
    int n_repeats = 50;
    double train_fraction = 0.7;
    double budget_fraction = 0.10;
    double binarization_threshold = 5.0;
    std::uint64_t seed = 0;
    Hyperparams hyper;
    // Parameter name -> candidate values. Empty means the default decade grid
    // 1e-3..1e3 over all five trade-off weights.
    std::map<std::string, std::vector<double>> hyper_grid;
    int mlknn_k = 10;
    double mlknn_s = 1.0;
    bool mlknn_train_on_masked = false;  // sensitivity toggle; default trains on full labels
    NormalizeMode normalize = NormalizeMode::zscore;
    int threads = 0;  // 0 = auto; always capped by env ADSEL_THREADS

    void validate() const;
};

// Per label dimension, exactly round(ratio * n) entries are hidden (uniform
// without replacement). Hidden label values are zeroed in `labels` and kept
// in `hidden`.
struct MaskedLabels {
    LabelMatrix labels;
    MaskMatrix mask;
    LabelMatrix hidden;
};
MaskedLabels simulate_missing(const LabelMatrix& y, double ratio, std::uint64_t seed);

// Y_ij = 1 iff rating >= threshold.
LabelMatrix binarize_labels(const Matrix& ratings, double threshold);

struct SplitIndices {
    std::vector<Index> train;
    std::vector<Index> test;
};
// Seeded random partition; train gets round(train_fraction * n) samples.
SplitIndices split_samples(Index n, double train_fraction, std::uint64_t seed);
// Grouped variant: whole participant groups go to one side.
SplitIndices split_by_group(const std::vector<std::string>& groups,
                            double train_fraction, std::uint64_t seed);

struct RepeatOutcome {
    bool ok = false;
    std::string error;
    MetricReport report;
    std::vector<double> objective_trace;
};

struct MetricAggregate {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation over successful repeats
};

struct RunRecord {
    double missing_ratio = 0.0;
    ExperimentConfig config;  // snapshot, hyper included
    std::vector<RepeatOutcome> repeats;
    MetricAggregate hl, rl, cv, ap;
    int n_ok = 0;
    Index total_skipped = 0;
    double wall_seconds = 0.0;
};

// Full protocol, one record per missing ratio: split, mask the training
// labels, fit, rank, select, classify the test split, score, aggregate.
// Failed repeats are kept with their error message.
std::vector<RunRecord> run_experiment(const Dataset& ds, const ExperimentConfig& cfg);

// Same protocol with an explicit hyperparameter override (grid/sweep driver).
std::vector<RunRecord> run_protocol(const Dataset& ds, const ExperimentConfig& cfg,
                                    const Hyperparams& hp);

// Returns one validation score per missing ratio (higher is better).
using GridScorer =
    std::function<std::vector<double>(const Dataset&, const ExperimentConfig&, const Hyperparams&)>;

struct GridEntry {
    Hyperparams hp;
    double score = 0.0;  // mean over ratios
    std::vector<double> per_ratio_scores;
};

struct GridSearchResult {
    Hyperparams best;  // argmax of the global score, ties to the smallest tuple
    std::vector<GridEntry> table;
    std::vector<Hyperparams> best_per_ratio;
};

// Grid points are evaluated with identical seeds; the default scorer is the
// protocol's mean test average-precision per ratio.
GridSearchResult grid_search(const Dataset& ds, const ExperimentConfig& cfg,
                             const GridScorer& scorer = {});

struct SweepRow {
    std::string parameter;
    double value = 0.0;
    Hyperparams hp;
    MetricAggregate hl, rl, cv, ap;  // pooled over all ratios and repeats
};

// One-parameter sensitivity sweep; all other parameters stay at cfg.hyper.
std::vector<SweepRow> sensitivity_sweep(const Dataset& ds, const ExperimentConfig& cfg,
                                        const std::string& parameter);

std::vector<double> default_decade_grid();

}  // namespace adsel
