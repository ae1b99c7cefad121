#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace impshap {

// Tabular classification data. Per-feature means are recomputed whenever a
// dataset is constructed; they serve as the default removal baseline.
struct Dataset {
    std::vector<std::vector<double>> features;  // n rows x m columns
    std::vector<int> labels;                    // values in [0, class_count)
    std::vector<std::string> feature_names;
    std::size_t class_count = 0;
    std::vector<double> feature_means;

    std::size_t rows() const { return features.size(); }
    std::size_t cols() const { return feature_names.size(); }
};

// Validates shape and labels, computes means and the class count.
Dataset make_dataset(std::vector<std::vector<double>> features, std::vector<int> labels,
                     std::vector<std::string> feature_names);

enum class SyntheticKind { circle, gauss_rings, clusters };

const char* to_string(SyntheticKind kind);
std::optional<SyntheticKind> synthetic_from_string(std::string_view name);

struct SyntheticSplit {
    Dataset train;
    Dataset test;
};

// Two-feature synthetic problems (1000 train / 250 test rows):
//   circle       2 classes, uniform on [0,5]^2, inside the unit circle at
//                (2.5, 2.5) vs outside
//   gauss_rings  3 classes, normal around (2.5, 2.5) with covariance 0.5 I,
//                rings cut at radii 1 and 2; drawn per-class to fixed counts
//   clusters     4 classes, unit-variance Gaussian clusters at the corners of
//                the side-2 square centered at (2.5, 2.5)
SyntheticSplit generate_dataset(SyntheticKind which, std::uint64_t seed);

// Comma-separated, first row a header, '.' decimal point. The label column is
// selected by name; its values map to 0.. in order of first appearance.
// Ragged rows, missing cells, and non-numeric features are rejected with the
// offending location.
Dataset load_csv(const std::string& path, const std::string& label_column);

// Writes features plus a final label column under the given header name.
void write_csv(const Dataset& data, const std::string& path,
               const std::string& label_column = "label");

}  // namespace impshap
