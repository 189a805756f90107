#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataset.hpp"

namespace fairclust {

enum class RuleKind {
    threshold,  // numeric: value >= threshold -> 1, else 0
    equals,     // categorical: value == target -> 1, else 0
    two_sets,   // categorical: membership in side_b -> 1, side_a -> 0, else dropped
};

struct DichotomyRule {
    RuleKind kind = RuleKind::equals;
    double threshold = 0.0;
    std::string value;
    std::vector<std::string> side_a;
    std::vector<std::string> side_b;
};

struct ProtectedSpec {
    std::string column;
    DichotomyRule rule;
};

// Declarative description of one benchmark dataset: which CSV, which numeric
// feature columns, and how protected attributes are turned into binary labels.
// With m protected columns the color of a row is sum(label_i << i), i in
// listing order, giving 2^m colors.
struct DatasetSpec {
    std::string name;
    std::string source;
    std::vector<std::string> feature_columns;
    std::vector<ProtectedSpec> protected_columns;
    int subsample_size = 0;
    int num_samples = 1;
    std::uint64_t seed = 0;
    bool minmax_normalize = false;
};

// Key-value spec file parser ('#' comments, one "key = value" per line,
// repeated "protected" lines). Unknown keys are errors.
DatasetSpec parse_spec_file(const std::string& path);

struct LoadReport {
    long rows_read = 0;        // data rows in the file
    long rows_kept = 0;        // rows in the resulting table
    long rejected = 0;         // non-numeric or short rows
    long duplicates = 0;       // dropped as duplicate selected tuples
    long unmatched = 0;        // dropped by two-set dichotomization
    std::vector<std::string> diagnostics;  // first rejections, row-indexed
};

struct RawTable {
    int dim = 0;
    int num_colors = 1;
    std::vector<double> features;  // row-major rows_kept x dim
    std::vector<int> colors;
    LoadReport report;
};

// Minimal CSV reader: quoted fields, doubled-quote escapes, CR/LF endings.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& path);

// Applies a spec: selects columns, rejects unparseable rows with row-indexed
// diagnostics, drops rows unmatched by two-set rules, deduplicates on the full
// selected tuple, then optionally min-max normalizes features.
RawTable load_csv(const DatasetSpec& spec);

// Binary labels for one protected column; -1 marks rows outside a two-set
// selection (to be dropped by the caller). Raises when a side ends up empty.
std::vector<int> dichotomize(const std::vector<std::string>& values, const DichotomyRule& rule);

// Uniform sample without replacement of size/num_colors rows per color,
// reproducible by seed. Points are emitted color-major.
ColoredDataset balanced_subsample(const RawTable& table, int size, std::uint64_t seed);

}  // namespace fairclust
