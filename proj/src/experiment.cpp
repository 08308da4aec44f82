#include "adsel/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "adsel/ranking.hpp"
#include "adsel/rng.hpp"

namespace adsel {

namespace {

constexpr std::uint64_t kSplitStream = 1;
constexpr std::uint64_t kMaskStream = 2;
constexpr std::uint64_t kSolverStream = 3;

int resolve_threads(int requested, int jobs) {
    int t = requested > 0 ? requested
                          : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    if (const char* env = std::getenv("ADSEL_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) t = std::min(t, cap);
    }
    return std::min(t, std::max(jobs, 1));
}

// Runs fn(0..jobs-1) on a small worker pool; results land by index, so the
// outcome is independent of scheduling.
void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1) {
        for (int i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const int i = next.fetch_add(1);
                if (i >= jobs) break;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

Matrix take_columns(const Matrix& m, const std::vector<Index>& cols) {
    Matrix out(m.rows(), static_cast<Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) out.col(static_cast<Index>(c)) = m.col(cols[c]);
    return out;
}

Matrix take_rows(const Matrix& m, const std::vector<Index>& rows) {
    Matrix out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Index>(r)) = m.row(rows[r]);
    return out;
}

MetricAggregate aggregate(const std::vector<double>& xs) {
    MetricAggregate a;
    if (xs.empty()) return a;
    a.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - a.mean) * (x - a.mean);
        a.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return a;
}

RepeatOutcome run_single_repeat(const Dataset& ds, const ExperimentConfig& cfg,
                                const Hyperparams& hp, double ratio,
                                std::uint64_t repeat_seed) {
    RepeatOutcome out;
    try {
        const Index n = ds.sample_count();
        const SplitIndices split =
            ds.sample_groups.empty()
                ? split_samples(n, cfg.train_fraction, mix_seed(repeat_seed, kSplitStream))
                : split_by_group(ds.sample_groups, cfg.train_fraction,
                                 mix_seed(repeat_seed, kSplitStream));

        const Matrix x_train = take_columns(ds.features.values, split.train);
        const Matrix x_test = take_columns(ds.features.values, split.test);
        const Matrix y_train = take_rows(ds.labels.values, split.train);
        const Matrix y_test = take_rows(ds.labels.values, split.test);

        MaskedLabels masked = simulate_missing(LabelMatrix{y_train}, ratio,
                                               mix_seed(repeat_seed, kMaskStream));

        Dataset train;
        train.features = FeatureMatrix{x_train, ds.features.feature_names};
        train.labels = masked.labels;
        train.mask = masked.mask;
        train.hidden_labels = masked.hidden;

        Hyperparams run_hp = hp;
        run_hp.seed = mix_seed(repeat_seed, kSolverStream);

        AdselSolver solver(train, run_hp);
        ModelState state = solver.fit();
        out.objective_trace = state.objective_trace;

        const FeatureRanking ranking = rank_features(state.W);
        const std::vector<Index> selected = select_top(ranking, cfg.budget_fraction);

        const Matrix& knn_labels =
            cfg.mlknn_train_on_masked ? masked.labels.values : y_train;
        const MLKnnModel model = mlknn_fit(take_rows(x_train, selected), knn_labels,
                                           cfg.mlknn_k, cfg.mlknn_s);
        const PredictionResult pred = mlknn_predict(model, take_rows(x_test, selected));

        out.report = evaluate_all(pred, y_test);
        out.ok = true;
    } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

std::map<std::string, std::vector<double>> resolve_grid(const ExperimentConfig& cfg) {
    if (!cfg.hyper_grid.empty()) {
        for (const auto& [name, values] : cfg.hyper_grid) {
            if (name != "lambda" && name != "alpha" && name != "beta" && name != "mu" &&
                name != "delta")
                throw ParameterError("unknown grid parameter: " + name);
            if (values.empty())
                throw ParameterError("empty grid for parameter: " + name);
        }
        return cfg.hyper_grid;
    }
    std::map<std::string, std::vector<double>> grid;
    for (const char* p : {"lambda", "alpha", "beta", "mu", "delta"})
        grid[p] = default_decade_grid();
    return grid;
}

void set_weight(Hyperparams& hp, const std::string& name, double v) {
    if (name == "lambda") hp.lambda = v;
    else if (name == "alpha") hp.alpha = v;
    else if (name == "beta") hp.beta = v;
    else if (name == "mu") hp.mu = v;
    else if (name == "delta") hp.delta = v;
    else throw ParameterError("unknown parameter name: " + name);
}

}  // namespace

void ExperimentConfig::validate() const {
    for (double r : missing_ratios)
        if (!(r >= 0.0 && r < 1.0))
            throw ParameterError("missing ratio must lie in [0, 1)");
    if (missing_ratios.empty()) throw ParameterError("need at least one missing ratio");
    if (n_repeats < 1) throw ParameterError("n_repeats must be >= 1");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ParameterError("train_fraction must lie in (0, 1)");
    if (!(budget_fraction > 0.0 && budget_fraction <= 1.0))
        throw ParameterError("budget must lie in (0, 1]");
    if (mlknn_k < 1) throw ParameterError("mlknn_k must be >= 1");
    if (!(mlknn_s > 0.0)) throw ParameterError("mlknn_s must be positive");
}

std::vector<double> default_decade_grid() {
    return {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
}

MaskedLabels simulate_missing(const LabelMatrix& y, double ratio, std::uint64_t seed) {
    if (!(ratio >= 0.0 && ratio < 1.0))
        throw ParameterError("missing ratio must lie in [0, 1)");
    const Index n = y.values.rows();
    const Index k = y.values.cols();
    const Index m = static_cast<Index>(std::llround(ratio * static_cast<double>(n)));

    MaskedLabels out;
    out.labels = y;
    out.mask.values = Matrix::Ones(n, k);
    out.hidden.values = Matrix::Zero(n, k);

    std::mt19937_64 rng(seed);
    std::vector<Index> idx(static_cast<std::size_t>(n));
    for (Index j = 0; j < k; ++j) {
        // partial Fisher-Yates: first m entries are a uniform sample w/o replacement
        std::iota(idx.begin(), idx.end(), Index{0});
        for (Index t = 0; t < m; ++t) {
            std::uniform_int_distribution<Index> pick(t, n - 1);
            std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(pick(rng))]);
        }
        for (Index t = 0; t < m; ++t) {
            const Index i = idx[static_cast<std::size_t>(t)];
            out.mask.values(i, j) = 0.0;
            out.hidden.values(i, j) = y.values(i, j);
            out.labels.values(i, j) = 0.0;
        }
    }
    return out;
}

LabelMatrix binarize_labels(const Matrix& ratings, double threshold) {
    LabelMatrix y;
    y.values = (ratings.array() >= threshold).cast<double>();
    return y;
}

SplitIndices split_samples(Index n, double train_fraction, std::uint64_t seed) {
    if (n < 2) throw ParameterError("split needs at least 2 samples");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ParameterError("train_fraction must lie in (0, 1)");

    std::vector<Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), Index{0});
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);

    Index n_train = static_cast<Index>(std::llround(train_fraction * static_cast<double>(n)));
    n_train = std::clamp<Index>(n_train, 1, n - 1);

    SplitIndices split;
    split.train.assign(idx.begin(), idx.begin() + n_train);
    split.test.assign(idx.begin() + n_train, idx.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

SplitIndices split_by_group(const std::vector<std::string>& groups,
                            double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ParameterError("train_fraction must lie in (0, 1)");
    std::vector<std::string> unique(groups.begin(), groups.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    const Index g = static_cast<Index>(unique.size());
    if (g < 2) throw ParameterError("grouped split needs at least 2 participant groups");

    std::mt19937_64 rng(seed);
    std::shuffle(unique.begin(), unique.end(), rng);
    Index g_train = static_cast<Index>(std::llround(train_fraction * static_cast<double>(g)));
    g_train = std::clamp<Index>(g_train, 1, g - 1);
    const std::set<std::string> train_groups(unique.begin(), unique.begin() + g_train);

    SplitIndices split;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (train_groups.count(groups[i]))
            split.train.push_back(static_cast<Index>(i));
        else
            split.test.push_back(static_cast<Index>(i));
    }
    return split;
}

std::vector<RunRecord> run_protocol(const Dataset& ds, const ExperimentConfig& cfg,
                                    const Hyperparams& hp) {
    cfg.validate();
    require_valid(ds);

    std::vector<RunRecord> records;
    records.reserve(cfg.missing_ratios.size());
    const int threads = resolve_threads(cfg.threads, cfg.n_repeats);

    for (std::size_t ri = 0; ri < cfg.missing_ratios.size(); ++ri) {
        const double ratio = cfg.missing_ratios[ri];
        RunRecord rec;
        rec.missing_ratio = ratio;
        rec.config = cfg;
        rec.config.hyper = hp;
        rec.repeats.resize(static_cast<std::size_t>(cfg.n_repeats));

        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t ratio_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(ri));
        parallel_for(cfg.n_repeats, threads, [&](int r) {
            rec.repeats[static_cast<std::size_t>(r)] = run_single_repeat(
                ds, cfg, hp, ratio, mix_seed(ratio_seed, static_cast<std::uint64_t>(r)));
        });
        rec.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::vector<double> hls, rls, cvs, aps;
        for (const auto& rep : rec.repeats) {
            if (!rep.ok) continue;
            hls.push_back(rep.report.hamming_loss);
            rls.push_back(rep.report.ranking_loss);
            cvs.push_back(rep.report.coverage);
            aps.push_back(rep.report.average_precision);
            rec.total_skipped += rep.report.skipped_samples;
        }
        rec.n_ok = static_cast<int>(hls.size());
        rec.hl = aggregate(hls);
        rec.rl = aggregate(rls);
        rec.cv = aggregate(cvs);
        rec.ap = aggregate(aps);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<RunRecord> run_experiment(const Dataset& ds, const ExperimentConfig& cfg) {
    return run_protocol(ds, cfg, cfg.hyper);
}

GridSearchResult grid_search(const Dataset& ds, const ExperimentConfig& cfg,
                             const GridScorer& scorer) {
    const auto grid = resolve_grid(cfg);

    GridScorer eval = scorer;
    if (!eval) {
        eval = [](const Dataset& d, const ExperimentConfig& c, const Hyperparams& hp) {
            std::vector<double> scores;
            for (const RunRecord& rec : run_protocol(d, c, hp))
                scores.push_back(rec.n_ok > 0 ? rec.ap.mean
                                              : -std::numeric_limits<double>::infinity());
            return scores;
        };
    }

    // enumerate lexicographically over (lambda, alpha, beta, mu, delta) so a
    // strict-greater comparison lands on the smallest tied tuple
    const std::vector<std::string> order = {"lambda", "alpha", "beta", "mu", "delta"};
    std::vector<std::vector<double>> axes;
    for (const auto& name : order) {
        auto it = grid.find(name);
        if (it == grid.end()) {
            Hyperparams base = cfg.hyper;
            double v = name == "lambda" ? base.lambda
                       : name == "alpha" ? base.alpha
                       : name == "beta"  ? base.beta
                       : name == "mu"    ? base.mu
                                         : base.delta;
            axes.push_back({v});
        } else {
            auto values = it->second;
            std::sort(values.begin(), values.end());
            axes.push_back(values);
        }
    }

    GridSearchResult result;
    double best_score = -std::numeric_limits<double>::infinity();
    std::vector<double> best_ratio_scores;

    std::vector<std::size_t> pos(axes.size(), 0);
    while (true) {
        Hyperparams hp = cfg.hyper;
        for (std::size_t a = 0; a < axes.size(); ++a)
            set_weight(hp, order[a], axes[a][pos[a]]);

        GridEntry entry;
        entry.hp = hp;
        entry.per_ratio_scores = eval(ds, cfg, hp);
        entry.score = entry.per_ratio_scores.empty()
                          ? -std::numeric_limits<double>::infinity()
                          : std::accumulate(entry.per_ratio_scores.begin(),
                                            entry.per_ratio_scores.end(), 0.0) /
                                static_cast<double>(entry.per_ratio_scores.size());
        if (entry.score > best_score) {
            best_score = entry.score;
            result.best = hp;
        }
        if (best_ratio_scores.size() < entry.per_ratio_scores.size()) {
            best_ratio_scores.assign(entry.per_ratio_scores.size(),
                                     -std::numeric_limits<double>::infinity());
            result.best_per_ratio.assign(entry.per_ratio_scores.size(), hp);
        }
        for (std::size_t i = 0; i < entry.per_ratio_scores.size(); ++i) {
            if (entry.per_ratio_scores[i] > best_ratio_scores[i]) {
                best_ratio_scores[i] = entry.per_ratio_scores[i];
                result.best_per_ratio[i] = hp;
            }
        }
        result.table.push_back(std::move(entry));

        // odometer increment
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++pos[a] < axes[a].size()) break;
            pos[a] = 0;
            if (a == 0) return result;
        }
    }
}

std::vector<SweepRow> sensitivity_sweep(const Dataset& ds, const ExperimentConfig& cfg,
                                        const std::string& parameter) {
    if (parameter != "lambda" && parameter != "alpha" && parameter != "beta" &&
        parameter != "mu" && parameter != "delta")
        throw ParameterError("unknown sweep parameter: " + parameter);

    std::vector<double> values;
    if (auto it = cfg.hyper_grid.find(parameter); it != cfg.hyper_grid.end())
        values = it->second;
    else
        values = default_decade_grid();

    std::vector<SweepRow> rows;
    for (double v : values) {
        Hyperparams hp = cfg.hyper;
        set_weight(hp, parameter, v);
        const auto records = run_protocol(ds, cfg, hp);

        std::vector<double> hls, rls, cvs, aps;
        for (const auto& rec : records) {
            for (const auto& rep : rec.repeats) {
                if (!rep.ok) continue;
                hls.push_back(rep.report.hamming_loss);
                rls.push_back(rep.report.ranking_loss);
                cvs.push_back(rep.report.coverage);
                aps.push_back(rep.report.average_precision);
            }
        }
        SweepRow row;
        row.parameter = parameter;
        row.value = v;
        row.hp = hp;
        row.hl = aggregate(hls);
        row.rl = aggregate(rls);
        row.cv = aggregate(cvs);
        row.ap = aggregate(aps);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace adsel
