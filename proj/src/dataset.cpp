#include "adsel/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "adsel/csv.hpp"

namespace adsel {

namespace {

bool is_binary(double v) { return v == 0.0 || v == 1.0; }

std::string cell(Index i, Index j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v << '\n';
    return os.str();
}

LoadedMatrix load_csv_matrix(const std::filesystem::path& path, Orientation orientation) {
    csv::Table t = csv::read_table(path);
    return LoadedMatrix{std::move(t.values), std::move(t.header), orientation};
}

FeatureMatrix make_features(const LoadedMatrix& loaded) {
    FeatureMatrix fm;
    if (loaded.orientation == Orientation::rows_are_samples) {
        fm.values = loaded.values.transpose();
        fm.feature_names = loaded.header;  // columns were features
    } else {
        fm.values = loaded.values;  // already d x n; header (if any) named samples
    }
    return fm;
}

FeatureMatrix load_features(const std::filesystem::path& path, Orientation orientation) {
    return make_features(load_csv_matrix(path, orientation));
}

LabelMatrix load_labels(const std::filesystem::path& path) {
    return LabelMatrix{csv::read_table(path).values};
}

MaskMatrix load_mask(const std::filesystem::path& path) {
    return MaskMatrix{csv::read_table(path).values};
}

std::vector<std::string> load_groups(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::vector<std::string> groups;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        groups.push_back(line);
    }
    if (groups.empty()) throw ParseError(path.string() + ": empty file");
    return groups;
}

NormalizeResult normalize_features(const FeatureMatrix& x, NormalizeMode mode) {
    NormalizeResult out;
    out.features = x;
    if (mode == NormalizeMode::none) return out;

    const Index d = x.feature_count();
    const Index n = x.sample_count();
    for (Index i = 0; i < d; ++i) {
        const double mean = x.values.row(i).mean();
        Eigen::RowVectorXd centered = x.values.row(i).array() - mean;
        const double var = centered.squaredNorm() / static_cast<double>(n);
        const double sd = std::sqrt(var);
        if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) {
            out.features.values.row(i).setZero();
            out.constant_rows.push_back(i);
        } else {
            out.features.values.row(i) = centered / sd;
        }
    }
    return out;
}

Dataset make_dataset(FeatureMatrix features, LabelMatrix labels,
                     std::optional<MaskMatrix> mask, std::vector<std::string> groups) {
    Dataset ds;
    ds.features = std::move(features);
    ds.labels = std::move(labels);
    if (mask) {
        ds.mask = std::move(*mask);
        const Index n = ds.labels.values.rows();
        const Index k = ds.labels.values.cols();
        if (ds.mask.values.rows() == n && ds.mask.values.cols() == k) {
            // enforce the stored-zero convention for masked cells
            Matrix hidden = Matrix::Zero(n, k);
            bool any_hidden = false;
            for (Index i = 0; i < n; ++i) {
                for (Index j = 0; j < k; ++j) {
                    if (ds.mask.values(i, j) == 0.0 && ds.labels.values(i, j) != 0.0) {
                        hidden(i, j) = ds.labels.values(i, j);
                        ds.labels.values(i, j) = 0.0;
                        any_hidden = true;
                    }
                }
            }
            if (any_hidden) ds.hidden_labels = LabelMatrix{std::move(hidden)};
        }
    } else {
        ds.mask.values = Matrix::Ones(ds.labels.values.rows(), ds.labels.values.cols());
    }
    ds.sample_groups = std::move(groups);
    return ds;
}

ValidationReport validate_dataset(const Dataset& ds) {
    ValidationReport rep;
    const Matrix& x = ds.features.values;
    const Matrix& y = ds.labels.values;
    const Matrix& p = ds.mask.values;

    if (x.rows() < 1) rep.violations.push_back("features: need at least 1 feature");
    if (x.cols() < 2) rep.violations.push_back("features: need at least 2 samples");
    if (!x.allFinite()) {
        for (Index i = 0; i < x.rows(); ++i)
            for (Index j = 0; j < x.cols(); ++j)
                if (!std::isfinite(x(i, j))) {
                    rep.violations.push_back("features: non-finite entry at " + cell(i, j));
                    i = x.rows();  // report the first offender only
                    break;
                }
    }

    if (y.cols() < 2) rep.violations.push_back("labels: need at least 2 label dimensions");
    if (y.rows() != x.cols())
        rep.violations.push_back("labels: row count " + std::to_string(y.rows()) +
                                 " does not match sample count " + std::to_string(x.cols()));
    for (Index i = 0; i < y.rows(); ++i)
        for (Index j = 0; j < y.cols(); ++j)
            if (!is_binary(y(i, j)))
                rep.violations.push_back("non-binary label at " + cell(i, j));

    if (p.rows() != y.rows() || p.cols() != y.cols()) {
        rep.violations.push_back("mask: shape does not match labels");
    } else {
        for (Index i = 0; i < p.rows(); ++i) {
            for (Index j = 0; j < p.cols(); ++j) {
                if (!is_binary(p(i, j)))
                    rep.violations.push_back("mask: non-binary entry at " + cell(i, j));
                else if (p(i, j) == 0.0 && i < y.rows() && j < y.cols() && y(i, j) != 0.0)
                    rep.violations.push_back("unmasked hidden label at " + cell(i, j));
            }
        }
    }

    if (ds.hidden_labels) {
        const Matrix& h = ds.hidden_labels->values;
        if (h.rows() != y.rows() || h.cols() != y.cols())
            rep.violations.push_back("hidden_labels: shape does not match labels");
    }
    if (!ds.sample_groups.empty() &&
        static_cast<Index>(ds.sample_groups.size()) != x.cols())
        rep.violations.push_back("sample_groups: size does not match sample count");

    if (!ds.features.feature_names.empty() &&
        static_cast<Index>(ds.features.feature_names.size()) != x.rows())
        rep.violations.push_back("feature_names: size does not match feature count");

    return rep;
}

void require_valid(const Dataset& ds) {
    ValidationReport rep = validate_dataset(ds);
    if (!rep.ok()) throw ValidationError("invalid dataset:\n" + rep.to_string());
}

}  // namespace adsel
