#pragma once

#include <functional>
#include <vector>

#include "impshap/types.hpp"

namespace impshap {

// Black-box classifier surface: feature vector in, class distribution out.
class PredictionModel {
public:
    virtual ~PredictionModel() = default;
    virtual std::size_t feature_count() const = 0;
    virtual std::size_t class_count() const = 0;
    virtual ProbabilityDistribution predict(const std::vector<double>& x) const = 0;
};

// Lookup model backed by an explicit table of (point, distribution) pairs.
// Points match coordinate-wise within a small tolerance.
class TableModel : public PredictionModel {
public:
    TableModel(std::size_t feature_count, std::size_t class_count)
        : feature_count_(feature_count), class_count_(class_count) {}

    void add(std::vector<double> point, ProbabilityDistribution prediction);

    std::size_t feature_count() const override { return feature_count_; }
    std::size_t class_count() const override { return class_count_; }
    ProbabilityDistribution predict(const std::vector<double>& x) const override;

private:
    std::size_t feature_count_;
    std::size_t class_count_;
    std::vector<std::pair<std::vector<double>, ProbabilityDistribution>> entries_;
};

// Adapts a callable to the model surface; handy in tests.
class FunctionModel : public PredictionModel {
public:
    using Fn = std::function<ProbabilityDistribution(const std::vector<double>&)>;

    FunctionModel(std::size_t feature_count, std::size_t class_count, Fn fn)
        : feature_count_(feature_count), class_count_(class_count), fn_(std::move(fn)) {}

    std::size_t feature_count() const override { return feature_count_; }
    std::size_t class_count() const override { return class_count_; }
    ProbabilityDistribution predict(const std::vector<double>& x) const override {
        return fn_(x);
    }

private:
    std::size_t feature_count_;
    std::size_t class_count_;
    Fn fn_;
};

}  // namespace impshap
