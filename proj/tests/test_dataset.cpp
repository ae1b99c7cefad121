#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "impshap/dataset.hpp"

using namespace impshap;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("make_dataset computes means and class count") {
    const Dataset data = make_dataset({{1.0, 2.0}, {3.0, 6.0}}, {0, 1}, {"a", "b"});
    CHECK(data.rows() == 2);
    CHECK(data.cols() == 2);
    CHECK(data.class_count == 2);
    CHECK(data.feature_means[0] == doctest::Approx(2.0));
    CHECK(data.feature_means[1] == doctest::Approx(4.0));
    CHECK_THROWS_AS(make_dataset({}, {}, {"a"}), std::invalid_argument);
    CHECK_THROWS_AS(make_dataset({{1.0}}, {0, 1}, {"a"}), std::invalid_argument);
    CHECK_THROWS_AS(make_dataset({{1.0, 2.0}, {1.0}}, {0, 1}, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("circle dataset geometry and sizes") {
    const SyntheticSplit split = generate_dataset(SyntheticKind::circle, 42);
    CHECK(split.train.rows() == 1000);
    CHECK(split.test.rows() == 250);
    CHECK(split.train.class_count == 2);
    for (std::size_t r = 0; r < split.train.rows(); ++r) {
        const double dx = split.train.features[r][0] - 2.5;
        const double dy = split.train.features[r][1] - 2.5;
        const int expected = dx * dx + dy * dy < 1.0 ? 0 : 1;
        CHECK(split.train.labels[r] == expected);
    }
    // inside-class share is near the area ratio pi / 25
    const std::size_t inside = static_cast<std::size_t>(
        std::count(split.train.labels.begin(), split.train.labels.end(), 0));
    CHECK(inside > 85);
    CHECK(inside < 170);
}

TEST_CASE("gauss_rings dataset hits the fixed class counts with geometric labels") {
    const SyntheticSplit split = generate_dataset(SyntheticKind::gauss_rings, 7);
    REQUIRE(split.train.rows() == 1000);
    REQUIRE(split.test.rows() == 250);
    std::vector<int> counts(3, 0);
    for (std::size_t r = 0; r < split.train.rows(); ++r) {
        const double dx = split.train.features[r][0] - 2.5;
        const double dy = split.train.features[r][1] - 2.5;
        const double radius = std::sqrt(dx * dx + dy * dy);
        int expected = 1;
        if (radius < 1.0) expected = 0;
        if (radius > 2.0) expected = 2;
        CHECK(split.train.labels[r] == expected);
        ++counts[static_cast<std::size_t>(split.train.labels[r])];
    }
    CHECK(counts == std::vector<int>{340, 336, 324});
}

TEST_CASE("clusters dataset uses four classes around the square") {
    const SyntheticSplit split = generate_dataset(SyntheticKind::clusters, 3);
    CHECK(split.train.rows() == 1000);
    CHECK(split.train.class_count == 4);
    std::vector<int> counts(4, 0);
    for (const int label : split.train.labels) ++counts[static_cast<std::size_t>(label)];
    CHECK(counts == std::vector<int>{249, 263, 238, 250});
}

TEST_CASE("generation is deterministic per seed") {
    const SyntheticSplit a = generate_dataset(SyntheticKind::circle, 11);
    const SyntheticSplit b = generate_dataset(SyntheticKind::circle, 11);
    CHECK(a.train.features == b.train.features);
    CHECK(a.train.labels == b.train.labels);
    const SyntheticSplit c = generate_dataset(SyntheticKind::circle, 12);
    CHECK(a.train.features != c.train.features);
}

TEST_CASE("csv round trip") {
    TempFile file("impshap_test_roundtrip.csv");
    const Dataset data =
        make_dataset({{1.5, -2.0}, {0.25, 4.0}, {3.0, 0.125}}, {0, 1, 0}, {"x", "y"});
    write_csv(data, file.path);
    const Dataset loaded = load_csv(file.path, "label");
    CHECK(loaded.features == data.features);
    CHECK(loaded.labels == data.labels);
    CHECK(loaded.feature_names == data.feature_names);
}

TEST_CASE("csv label mapping follows first appearance") {
    TempFile file("impshap_test_labels.csv");
    write_text(file.path, "f,label\n1.0,a\n2.0,b\n3.0,a\n");
    const Dataset data = load_csv(file.path, "label");
    CHECK(data.labels == std::vector<int>{0, 1, 0});
    CHECK(data.class_count == 2);
}

TEST_CASE("csv errors carry locations") {
    TempFile ragged("impshap_test_ragged.csv");
    write_text(ragged.path, "a,b,label\n1.0,2.0,x\n1.0,x\n");
    CHECK_THROWS_WITH_AS(load_csv(ragged.path, "label"), doctest::Contains("row 3"),
                         std::runtime_error);

    TempFile missing("impshap_test_missing.csv");
    write_text(missing.path, "a,b,label\n1.0,,x\n");
    CHECK_THROWS_WITH_AS(load_csv(missing.path, "label"), doctest::Contains("row 2"),
                         std::runtime_error);

    TempFile textual("impshap_test_text.csv");
    write_text(textual.path, "a,b,label\n1.0,oops,x\n");
    CHECK_THROWS_WITH_AS(load_csv(textual.path, "label"), doctest::Contains("oops"),
                         std::runtime_error);

    TempFile fine("impshap_test_fine.csv");
    write_text(fine.path, "a,b,label\n1.0,2.0,x\n");
    CHECK_THROWS_AS(load_csv(fine.path, "nope"), std::runtime_error);
    CHECK_THROWS_AS(load_csv("/nonexistent/impshap.csv", "label"), std::runtime_error);
}
