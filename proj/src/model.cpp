#include "impshap/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace impshap {

namespace {
constexpr double kMatchTol = 1e-9;
}

void TableModel::add(std::vector<double> point, ProbabilityDistribution prediction) {
    if (point.size() != feature_count_) {
        throw std::invalid_argument("table point has wrong dimension");
    }
    if (prediction.size() != class_count_) {
        throw std::invalid_argument("table prediction has wrong class count");
    }
    entries_.emplace_back(std::move(point), std::move(prediction));
}

ProbabilityDistribution TableModel::predict(const std::vector<double>& x) const {
    if (x.size() != feature_count_) {
        throw std::invalid_argument("query point has wrong dimension");
    }
    for (const auto& [point, prediction] : entries_) {
        bool match = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (std::fabs(point[i] - x[i]) > kMatchTol) {
                match = false;
                break;
            }
        }
        if (match) return prediction;
    }
    throw std::out_of_range("no table entry for the queried point");
}

}  // namespace impshap
