#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adsel/types.hpp"

namespace adsel {

// How to interpret the rows of a CSV matrix file.
enum class Orientation { rows_are_features, rows_are_samples };

enum class NormalizeMode { zscore, none };

// Feature matrix X, d features (rows) by n samples (columns).
struct FeatureMatrix {
    Matrix values;
    std::vector<std::string> feature_names;  // optional; size d when present

    Index feature_count() const { return values.rows(); }
    Index sample_count() const { return values.cols(); }
};

// Binary label matrix Y, n samples by k label dimensions.
struct LabelMatrix {
    Matrix values;

    Index sample_count() const { return values.rows(); }
    Index label_count() const { return values.cols(); }
};

// Observation indicator P, same shape as the labels; 1 = entry observed.
struct MaskMatrix {
    Matrix values;
};

struct Dataset {
    FeatureMatrix features;
    LabelMatrix labels;
    MaskMatrix mask;  // all-ones when the labels are complete
    std::optional<LabelMatrix> hidden_labels;   // ground truth at masked cells
    std::vector<std::string> sample_groups;     // optional participant ids, size n

    Index feature_count() const { return features.feature_count(); }
    Index sample_count() const { return features.sample_count(); }
    Index label_count() const { return labels.label_count(); }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

struct LoadedMatrix {
    Matrix values;                    // file layout, not transposed
    std::vector<std::string> header;  // column names when a header row was present
    Orientation orientation;
};

// Plain numeric CSV -> matrix in file layout; `orientation` records what the
// rows mean for downstream conversion.
LoadedMatrix load_csv_matrix(const std::filesystem::path& path, Orientation orientation);

// Canonical d x n feature matrix; transposes when the file stores samples as
// rows, in which case header names become feature names.
FeatureMatrix make_features(const LoadedMatrix& loaded);
FeatureMatrix load_features(const std::filesystem::path& path, Orientation orientation);

// n x k label/mask matrices (rows are samples).
LabelMatrix load_labels(const std::filesystem::path& path);
MaskMatrix load_mask(const std::filesystem::path& path);

// One participant id per sample; single-column CSV (header optional).
std::vector<std::string> load_groups(const std::filesystem::path& path);

struct NormalizeResult {
    FeatureMatrix features;
    std::vector<Index> constant_rows;  // rows left at zero by zscore mode
};

// zscore: per feature row, subtract the mean and divide by the population
// standard deviation; constant rows become all-zero and are reported.
NormalizeResult normalize_features(const FeatureMatrix& x, NormalizeMode mode);

// Assemble a dataset honoring the stored-zero convention for masked cells:
// any label value sitting at a masked position is moved into hidden_labels.
Dataset make_dataset(FeatureMatrix features, LabelMatrix labels,
                     std::optional<MaskMatrix> mask = std::nullopt,
                     std::vector<std::string> groups = {});

ValidationReport validate_dataset(const Dataset& ds);

// Throws ValidationError with the full report when validation fails.
void require_valid(const Dataset& ds);

}  // namespace adsel
