#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "impshap/shapley.hpp"
#include "impshap/types.hpp"

namespace impshap {

struct FeatureExplanation {
    std::string name;
    double precise = 0.0;
    Interval raw;
    Interval reduced;
};

struct StrategyPick {
    double eta = 0.0;
    std::size_t feature_index = 0;
    std::string feature_name;
};

// Serializable result of one explanation run. Round-trips losslessly through
// JSON (doubles are written with full precision).
struct ExplanationReport {
    int schema_version = 1;
    std::vector<double> instance;
    std::string mode;
    std::string distance;
    std::string bound_method;
    double epsilon = 0.0;
    std::vector<double> epsilon_grid;  // non-empty for sweep runs
    std::uint64_t seed = 0;
    int mc_samples = 0;
    std::vector<FeatureExplanation> features;
    Interval total_gain;
    std::vector<StrategyPick> strategy_picks;
    std::string warning;
    double elapsed_ms = 0.0;
};

bool operator==(const FeatureExplanation& a, const FeatureExplanation& b);
bool operator==(const StrategyPick& a, const StrategyPick& b);
bool operator==(const ExplanationReport& a, const ExplanationReport& b);

ExplanationReport build_report(const std::vector<double>& instance,
                               const std::vector<std::string>& feature_names,
                               const ExplanationConfig& config, const ShapleyIntervalSet& values,
                               const std::vector<double>& etas, double elapsed_ms);

std::string report_to_json(const ExplanationReport& report);
ExplanationReport report_from_json(const std::string& text);

void save_report(const ExplanationReport& report, const std::string& path);
ExplanationReport load_report(const std::string& path);

// One CSV line per (feature, epsilon) pair, features outermost.
struct SweepRow {
    std::string feature;
    double epsilon = 0.0;
    double precise = 0.0;
    Interval raw;
    Interval reduced;
};

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace impshap
