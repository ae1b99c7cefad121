#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "impshap/dataset.hpp"
#include "impshap/model.hpp"

namespace impshap {

struct ForestOptions {
    int tree_count = 100;
    int max_depth = 8;           // <= 0 means unlimited
    bool bootstrap = true;
    int features_per_split = 0;  // 0 means floor(sqrt(m)), at least 1
    std::uint64_t seed = 0;
};

// Axis-aligned split node; feature < 0 marks a leaf carrying the class
// frequencies of its training samples.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> leaf_probs;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // root at index 0

    const std::vector<double>& leaf_for(const std::vector<double>& x) const;
    int depth() const;
};

// Bagged Gini trees; the prediction is the average of per-tree leaf class
// frequencies, always a valid distribution.
class RandomForestModel : public PredictionModel {
public:
    RandomForestModel(std::size_t feature_count, std::size_t class_count,
                      std::vector<DecisionTree> trees, std::optional<double> oob_accuracy);

    std::size_t feature_count() const override { return feature_count_; }
    std::size_t class_count() const override { return class_count_; }
    ProbabilityDistribution predict(const std::vector<double>& x) const override;

    const std::vector<DecisionTree>& trees() const { return trees_; }
    std::optional<double> oob_accuracy() const { return oob_accuracy_; }

private:
    std::size_t feature_count_;
    std::size_t class_count_;
    std::vector<DecisionTree> trees_;
    std::optional<double> oob_accuracy_;
};

// Deterministic per seed; trees are fitted in parallel on independent
// bootstrap draws. Rejects single-class data.
RandomForestModel fit_random_forest(const Dataset& data, const ForestOptions& options = {});

// Versioned JSON of split tuples and leaf frequencies.
void save_forest(const RandomForestModel& model, const std::string& path);
RandomForestModel load_forest(const std::string& path);

}  // namespace impshap
