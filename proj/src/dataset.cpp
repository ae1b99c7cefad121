#include "impshap/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "impshap/rng.hpp"

namespace impshap {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

double parse_number(const std::string& text, std::size_t row, std::size_t col) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string::npos) {
        throw std::runtime_error("missing value at row " + std::to_string(row) + ", column " +
                                 std::to_string(col));
    }
    const std::string trimmed = text.substr(begin, end - begin + 1);
    double value = 0.0;
    const char* first = trimmed.data();
    const char* last = trimmed.data() + trimmed.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw std::runtime_error("non-numeric value '" + trimmed + "' at row " +
                                 std::to_string(row) + ", column " + std::to_string(col));
    }
    return value;
}

struct LabeledPoint {
    double x;
    double y;
    int label;
};

Dataset points_to_dataset(const std::vector<LabeledPoint>& points) {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    features.reserve(points.size());
    labels.reserve(points.size());
    for (const LabeledPoint& p : points) {
        features.push_back({p.x, p.y});
        labels.push_back(p.label);
    }
    return make_dataset(std::move(features), std::move(labels), {"x", "y"});
}

constexpr double kCenter = 2.5;

int circle_label(double x, double y) {
    const double dx = x - kCenter;
    const double dy = y - kCenter;
    return dx * dx + dy * dy < 1.0 ? 0 : 1;
}

int ring_label(double x, double y) {
    const double dx = x - kCenter;
    const double dy = y - kCenter;
    const double r2 = dx * dx + dy * dy;
    if (r2 < 1.0) return 0;
    if (r2 > 4.0) return 2;
    return 1;
}

// draws from the generator until each class quota is filled; labels stay a
// pure function of the geometry
std::vector<LabeledPoint> fill_quotas(Rng& rng, const std::vector<std::size_t>& quota,
                                      double sigma, int (*labeler)(double, double)) {
    std::vector<std::size_t> remaining = quota;
    std::size_t total = 0;
    for (const std::size_t q : quota) total += q;
    std::vector<LabeledPoint> points;
    points.reserve(total);
    while (points.size() < total) {
        const double x = kCenter + sigma * rng.normal();
        const double y = kCenter + sigma * rng.normal();
        const int label = labeler(x, y);
        if (remaining[static_cast<std::size_t>(label)] == 0) continue;
        --remaining[static_cast<std::size_t>(label)];
        points.push_back(LabeledPoint{x, y, label});
    }
    return points;
}

Dataset generate_circle(Rng& rng, std::size_t rows) {
    std::vector<LabeledPoint> points;
    points.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double x = rng.uniform(0.0, 5.0);
        const double y = rng.uniform(0.0, 5.0);
        points.push_back(LabeledPoint{x, y, circle_label(x, y)});
    }
    return points_to_dataset(points);
}

Dataset generate_clusters(Rng& rng, const std::vector<std::size_t>& counts) {
    // corners of the side-2 square around the shared center
    const double cx[4] = {kCenter - 1.0, kCenter + 1.0, kCenter - 1.0, kCenter + 1.0};
    const double cy[4] = {kCenter - 1.0, kCenter - 1.0, kCenter + 1.0, kCenter + 1.0};
    std::vector<LabeledPoint> points;
    for (int label = 0; label < 4; ++label) {
        for (std::size_t i = 0; i < counts[static_cast<std::size_t>(label)]; ++i) {
            points.push_back(LabeledPoint{cx[label] + rng.normal(), cy[label] + rng.normal(),
                                          label});
        }
    }
    return points_to_dataset(points);
}

}  // namespace

Dataset make_dataset(std::vector<std::vector<double>> features, std::vector<int> labels,
                     std::vector<std::string> feature_names) {
    if (features.empty()) throw std::invalid_argument("dataset needs at least one row");
    if (features.size() != labels.size()) {
        throw std::invalid_argument("feature rows and labels disagree in length");
    }
    const std::size_t m = feature_names.size();
    int max_label = -1;
    for (std::size_t r = 0; r < features.size(); ++r) {
        if (features[r].size() != m) {
            throw std::invalid_argument("row " + std::to_string(r) + " has " +
                                        std::to_string(features[r].size()) +
                                        " features, expected " + std::to_string(m));
        }
        if (labels[r] < 0) throw std::invalid_argument("negative label at row " + std::to_string(r));
        max_label = std::max(max_label, labels[r]);
    }

    Dataset data;
    data.features = std::move(features);
    data.labels = std::move(labels);
    data.feature_names = std::move(feature_names);
    data.class_count = static_cast<std::size_t>(max_label) + 1;
    data.feature_means.assign(m, 0.0);
    for (const std::vector<double>& row : data.features) {
        for (std::size_t j = 0; j < m; ++j) data.feature_means[j] += row[j];
    }
    for (double& mean : data.feature_means) mean /= static_cast<double>(data.rows());
    return data;
}

const char* to_string(SyntheticKind kind) {
    switch (kind) {
        case SyntheticKind::circle: return "circle";
        case SyntheticKind::gauss_rings: return "gauss_rings";
        case SyntheticKind::clusters: return "clusters";
    }
    return "unknown";
}

std::optional<SyntheticKind> synthetic_from_string(std::string_view name) {
    if (name == "circle") return SyntheticKind::circle;
    if (name == "gauss_rings") return SyntheticKind::gauss_rings;
    if (name == "clusters") return SyntheticKind::clusters;
    return std::nullopt;
}

SyntheticSplit generate_dataset(SyntheticKind which, std::uint64_t seed) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(which)));
    switch (which) {
        case SyntheticKind::circle: {
            SyntheticSplit split;
            split.train = generate_circle(rng, 1000);
            split.test = generate_circle(rng, 250);
            return split;
        }
        case SyntheticKind::gauss_rings: {
            const double sigma = std::sqrt(0.5);
            SyntheticSplit split;
            split.train = points_to_dataset(fill_quotas(rng, {340, 336, 324}, sigma, ring_label));
            split.test = points_to_dataset(fill_quotas(rng, {92, 80, 78}, sigma, ring_label));
            return split;
        }
        case SyntheticKind::clusters: {
            SyntheticSplit split;
            split.train = generate_clusters(rng, {249, 263, 238, 250});
            split.test = generate_clusters(rng, {64, 50, 74, 62});
            return split;
        }
    }
    throw std::invalid_argument("unknown synthetic dataset tag");
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' is empty");
    const std::vector<std::string> header = split_line(line);
    std::size_t label_index = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) {
            label_index = j;
            break;
        }
    }
    if (label_index == header.size()) {
        throw std::runtime_error("label column '" + label_column + "' not found in '" + path +
                                 "'");
    }

    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != label_index) names.push_back(header[j]);
    }

    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    std::vector<std::string> seen_labels;  // first-appearance order
    std::size_t row_number = 1;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != header.size()) {
            throw std::runtime_error("row " + std::to_string(row_number) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        }
        std::vector<double> row;
        row.reserve(names.size());
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j == label_index) continue;
            row.push_back(parse_number(fields[j], row_number, j + 1));
        }
        const std::string& label_text = fields[label_index];
        if (label_text.empty()) {
            throw std::runtime_error("missing label at row " + std::to_string(row_number));
        }
        const auto it = std::find(seen_labels.begin(), seen_labels.end(), label_text);
        int label;
        if (it == seen_labels.end()) {
            label = static_cast<int>(seen_labels.size());
            seen_labels.push_back(label_text);
        } else {
            label = static_cast<int>(it - seen_labels.begin());
        }
        features.push_back(std::move(row));
        labels.push_back(label);
    }
    return make_dataset(std::move(features), std::move(labels), std::move(names));
}

void write_csv(const Dataset& data, const std::string& path, const std::string& label_column) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    std::ostringstream buffer;
    buffer.precision(17);
    for (std::size_t j = 0; j < data.cols(); ++j) {
        buffer << data.feature_names[j] << ',';
    }
    buffer << label_column << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            buffer << data.features[r][j] << ',';
        }
        buffer << data.labels[r] << '\n';
    }
    out << buffer.str();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace impshap
