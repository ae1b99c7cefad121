#include "impshap/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "impshap/parallel.hpp"
#include "impshap/rng.hpp"

namespace impshap {

namespace {

double gini(const std::vector<int>& counts, int total) {
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (const int c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

struct SplitChoice {
    bool valid = false;
    int feature = -1;
    double threshold = 0.0;
    double impurity = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const ForestOptions& options, int features_per_split,
                std::uint64_t tree_seed)
        : data_(data),
          options_(options),
          features_per_split_(features_per_split),
          rng_(tree_seed) {}

    DecisionTree fit(const std::vector<int>& sample_indices) {
        nodes_.clear();
        build(sample_indices, 0);
        return DecisionTree{std::move(nodes_)};
    }

    Rng& rng() { return rng_; }

private:
    int build(const std::vector<int>& samples, int depth) {
        const std::size_t c = data_.class_count;
        std::vector<int> counts(c, 0);
        for (const int idx : samples) ++counts[static_cast<std::size_t>(data_.labels[idx])];
        const bool pure =
            std::count_if(counts.begin(), counts.end(), [](int v) { return v > 0; }) <= 1;
        const bool depth_capped = options_.max_depth > 0 && depth >= options_.max_depth;

        SplitChoice choice;
        if (!pure && !depth_capped && samples.size() >= 2) {
            choice = choose_split(samples);
        }
        if (!choice.valid) {
            return make_leaf(counts, static_cast<int>(samples.size()));
        }

        std::vector<int> left_samples, right_samples;
        left_samples.reserve(samples.size());
        right_samples.reserve(samples.size());
        for (const int idx : samples) {
            if (data_.features[idx][choice.feature] <= choice.threshold) {
                left_samples.push_back(idx);
            } else {
                right_samples.push_back(idx);
            }
        }

        const int node_index = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[node_index].feature = choice.feature;
        nodes_[node_index].threshold = choice.threshold;
        const int left = build(left_samples, depth + 1);
        const int right = build(right_samples, depth + 1);
        nodes_[node_index].left = left;
        nodes_[node_index].right = right;
        return node_index;
    }

    int make_leaf(const std::vector<int>& counts, int total) {
        TreeNode leaf;
        leaf.leaf_probs.resize(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i) {
            leaf.leaf_probs[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
        }
        const int index = static_cast<int>(nodes_.size());
        nodes_.push_back(std::move(leaf));
        return index;
    }

    SplitChoice choose_split(const std::vector<int>& samples) {
        const std::size_t m = data_.cols();
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        // partial Fisher-Yates: the first features_per_split_ entries are the
        // random candidate set, the rest stay available as a fallback when no
        // candidate admits a valid split
        for (int i = 0; i < features_per_split_ && i + 1 < static_cast<int>(m); ++i) {
            const std::size_t j = i + rng_.uniform_index(m - static_cast<std::size_t>(i));
            std::swap(order[i], order[j]);
        }

        SplitChoice best;
        for (std::size_t pos = 0; pos < m; ++pos) {
            if (pos >= static_cast<std::size_t>(features_per_split_) && best.valid) break;
            evaluate_feature(order[pos], samples, best);
        }
        return best;
    }

    void evaluate_feature(int feature, const std::vector<int>& samples, SplitChoice& best) {
        std::vector<int> sorted = samples;
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
            const double va = data_.features[a][feature];
            const double vb = data_.features[b][feature];
            if (va != vb) return va < vb;
            return a < b;
        });

        const std::size_t c = data_.class_count;
        std::vector<int> left_counts(c, 0), right_counts(c, 0);
        for (const int idx : sorted) ++right_counts[static_cast<std::size_t>(data_.labels[idx])];
        const int total = static_cast<int>(sorted.size());

        for (int pos = 1; pos < total; ++pos) {
            const int moved = sorted[pos - 1];
            const int label = data_.labels[moved];
            ++left_counts[static_cast<std::size_t>(label)];
            --right_counts[static_cast<std::size_t>(label)];
            const double prev = data_.features[moved][feature];
            const double next = data_.features[sorted[pos]][feature];
            if (next <= prev) continue;
            const double threshold = 0.5 * (prev + next);
            const double impurity = (static_cast<double>(pos) * gini(left_counts, pos) +
                                     static_cast<double>(total - pos) *
                                         gini(right_counts, total - pos)) /
                                    static_cast<double>(total);
            if (!best.valid || impurity < best.impurity - 1e-12) {
                best.valid = true;
                best.feature = feature;
                best.threshold = threshold;
                best.impurity = impurity;
            }
        }
    }

    const Dataset& data_;
    const ForestOptions& options_;
    int features_per_split_;
    Rng rng_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

const std::vector<double>& DecisionTree::leaf_for(const std::vector<double>& x) const {
    int index = 0;
    while (nodes[index].feature >= 0) {
        const TreeNode& node = nodes[index];
        index = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                            : node.right;
    }
    return nodes[index].leaf_probs;
}

int DecisionTree::depth() const {
    std::vector<std::pair<int, int>> stack{{0, 0}};
    int deepest = 0;
    while (!stack.empty()) {
        const auto [index, depth] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, depth);
        const TreeNode& node = nodes[static_cast<std::size_t>(index)];
        if (node.feature >= 0) {
            stack.emplace_back(node.left, depth + 1);
            stack.emplace_back(node.right, depth + 1);
        }
    }
    return deepest;
}

RandomForestModel::RandomForestModel(std::size_t feature_count, std::size_t class_count,
                                     std::vector<DecisionTree> trees,
                                     std::optional<double> oob_accuracy)
    : feature_count_(feature_count),
      class_count_(class_count),
      trees_(std::move(trees)),
      oob_accuracy_(oob_accuracy) {
    if (trees_.empty()) throw std::invalid_argument("forest needs at least one tree");
}

ProbabilityDistribution RandomForestModel::predict(const std::vector<double>& x) const {
    if (x.size() != feature_count_) {
        throw std::invalid_argument("query has " + std::to_string(x.size()) +
                                    " features, model expects " +
                                    std::to_string(feature_count_));
    }
    std::vector<double> probs(class_count_, 0.0);
    for (const DecisionTree& tree : trees_) {
        const std::vector<double>& leaf = tree.leaf_for(x);
        for (std::size_t i = 0; i < class_count_; ++i) probs[i] += leaf[i];
    }
    for (double& p : probs) p /= static_cast<double>(trees_.size());
    return make_distribution(std::move(probs));
}

RandomForestModel fit_random_forest(const Dataset& data, const ForestOptions& options) {
    if (data.rows() < 2) throw std::invalid_argument("training data needs at least 2 rows");
    if (options.tree_count < 1) throw std::invalid_argument("tree count must be positive");
    std::vector<bool> present(data.class_count, false);
    for (const int label : data.labels) present[static_cast<std::size_t>(label)] = true;
    if (std::count(present.begin(), present.end(), true) < 2) {
        throw std::invalid_argument("training data holds a single class; nothing to separate");
    }

    const std::size_t m = data.cols();
    int features_per_split = options.features_per_split;
    if (features_per_split <= 0) {
        features_per_split = std::max(1, static_cast<int>(std::floor(std::sqrt(
                                             static_cast<double>(m)))));
    }
    features_per_split = std::min(features_per_split, static_cast<int>(m));

    const std::size_t n = data.rows();
    const std::size_t tree_count = static_cast<std::size_t>(options.tree_count);
    std::vector<DecisionTree> trees(tree_count);
    std::vector<std::vector<bool>> in_bag(tree_count, std::vector<bool>(n, false));

    parallel_for(tree_count, [&](std::size_t t) {
        TreeBuilder builder(data, options, features_per_split, mix_seed(options.seed, t));
        std::vector<int> samples;
        samples.reserve(n);
        if (options.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t pick = builder.rng().uniform_index(n);
                samples.push_back(static_cast<int>(pick));
                in_bag[t][pick] = true;
            }
            std::sort(samples.begin(), samples.end());
        } else {
            samples.resize(n);
            std::iota(samples.begin(), samples.end(), 0);
            in_bag[t].assign(n, true);
        }
        trees[t] = builder.fit(samples);
    });

    std::optional<double> oob;
    if (options.bootstrap) {
        std::size_t counted = 0;
        std::size_t correct = 0;
        for (std::size_t r = 0; r < n; ++r) {
            std::vector<double> probs(data.class_count, 0.0);
            std::size_t voters = 0;
            for (std::size_t t = 0; t < tree_count; ++t) {
                if (in_bag[t][r]) continue;
                const std::vector<double>& leaf = trees[t].leaf_for(data.features[r]);
                for (std::size_t i = 0; i < data.class_count; ++i) probs[i] += leaf[i];
                ++voters;
            }
            if (voters == 0) continue;
            ++counted;
            std::size_t best = 0;
            for (std::size_t i = 1; i < probs.size(); ++i) {
                if (probs[i] > probs[best]) best = i;
            }
            if (static_cast<int>(best) == data.labels[r]) ++correct;
        }
        if (counted > 0) {
            oob = static_cast<double>(correct) / static_cast<double>(counted);
        }
    }

    return RandomForestModel(m, data.class_count, std::move(trees), oob);
}

void save_forest(const RandomForestModel& model, const std::string& path) {
    nlohmann::json doc;
    doc["format"] = "impshap-forest";
    doc["schema_version"] = 1;
    doc["feature_count"] = model.feature_count();
    doc["class_count"] = model.class_count();
    if (model.oob_accuracy()) {
        doc["oob_accuracy"] = *model.oob_accuracy();
    } else {
        doc["oob_accuracy"] = nullptr;
    }
    nlohmann::json trees = nlohmann::json::array();
    for (const DecisionTree& tree : model.trees()) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const TreeNode& node : tree.nodes) {
            nlohmann::json entry;
            entry["feature"] = node.feature;
            entry["threshold"] = node.threshold;
            entry["left"] = node.left;
            entry["right"] = node.right;
            entry["leaf"] = node.leaf_probs;
            nodes.push_back(std::move(entry));
        }
        trees.push_back(nlohmann::json{{"nodes", std::move(nodes)}});
    }
    doc["trees"] = std::move(trees);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

RandomForestModel load_forest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    nlohmann::json doc;
    in >> doc;
    if (doc.value("format", "") != "impshap-forest") {
        throw std::runtime_error("'" + path + "' is not a serialized forest");
    }
    if (doc.value("schema_version", 0) != 1) {
        throw std::runtime_error("unsupported forest schema version in '" + path + "'");
    }
    const std::size_t feature_count = doc.at("feature_count").get<std::size_t>();
    const std::size_t class_count = doc.at("class_count").get<std::size_t>();
    std::optional<double> oob;
    if (doc.contains("oob_accuracy") && !doc["oob_accuracy"].is_null()) {
        oob = doc["oob_accuracy"].get<double>();
    }
    std::vector<DecisionTree> trees;
    for (const nlohmann::json& tree_doc : doc.at("trees")) {
        DecisionTree tree;
        for (const nlohmann::json& node_doc : tree_doc.at("nodes")) {
            TreeNode node;
            node.feature = node_doc.at("feature").get<int>();
            node.threshold = node_doc.at("threshold").get<double>();
            node.left = node_doc.at("left").get<int>();
            node.right = node_doc.at("right").get<int>();
            node.leaf_probs = node_doc.at("leaf").get<std::vector<double>>();
            tree.nodes.push_back(std::move(node));
        }
        trees.push_back(std::move(tree));
    }
    return RandomForestModel(feature_count, class_count, std::move(trees), oob);
}

}  // namespace impshap
