#include "impshap/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace impshap {

namespace {

// JSON has no literal for non-finite doubles; divergence-valued endpoints
// can legitimately be infinite (KL against a zero-probability reference), so
// those are written as strings and decoded back.
nlohmann::json encode_real(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0.0 ? "inf" : "-inf";
}

double decode_real(const nlohmann::json& doc) {
    if (doc.is_number()) return doc.get<double>();
    const std::string text = doc.get<std::string>();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::runtime_error("unrecognized numeric encoding '" + text + "'");
}

nlohmann::json interval_to_json(const Interval& iv) {
    return nlohmann::json{{"lo", encode_real(iv.lo)}, {"hi", encode_real(iv.hi)}};
}

Interval interval_from_json(const nlohmann::json& doc) {
    return Interval{decode_real(doc.at("lo")), decode_real(doc.at("hi"))};
}

}  // namespace

bool operator==(const FeatureExplanation& a, const FeatureExplanation& b) {
    return a.name == b.name && a.precise == b.precise && a.raw.lo == b.raw.lo &&
           a.raw.hi == b.raw.hi && a.reduced.lo == b.reduced.lo && a.reduced.hi == b.reduced.hi;
}

bool operator==(const StrategyPick& a, const StrategyPick& b) {
    return a.eta == b.eta && a.feature_index == b.feature_index &&
           a.feature_name == b.feature_name;
}

bool operator==(const ExplanationReport& a, const ExplanationReport& b) {
    return a.schema_version == b.schema_version && a.instance == b.instance && a.mode == b.mode &&
           a.distance == b.distance && a.bound_method == b.bound_method &&
           a.epsilon == b.epsilon && a.epsilon_grid == b.epsilon_grid && a.seed == b.seed &&
           a.mc_samples == b.mc_samples && a.features == b.features &&
           a.total_gain.lo == b.total_gain.lo && a.total_gain.hi == b.total_gain.hi &&
           a.strategy_picks == b.strategy_picks && a.warning == b.warning &&
           a.elapsed_ms == b.elapsed_ms;
}

ExplanationReport build_report(const std::vector<double>& instance,
                               const std::vector<std::string>& feature_names,
                               const ExplanationConfig& config, const ShapleyIntervalSet& values,
                               const std::vector<double>& etas, double elapsed_ms) {
    ExplanationReport report;
    report.instance = instance;
    report.mode = to_string(config.mode);
    report.distance = to_string(config.distance);
    report.bound_method = to_string(config.bound_method);
    report.epsilon = config.epsilon;
    report.seed = config.seed;
    report.mc_samples = config.mc_samples;
    report.total_gain = values.total_gain;
    report.warning = values.warning;
    report.elapsed_ms = elapsed_ms;

    for (std::size_t i = 0; i < values.feature_count(); ++i) {
        FeatureExplanation fe;
        fe.name = i < feature_names.size() ? feature_names[i] : "f" + std::to_string(i);
        fe.precise = values.precise[i];
        fe.raw = values.raw[i];
        fe.reduced = values.reduced[i];
        report.features.push_back(std::move(fe));
    }
    for (const double eta : etas) {
        StrategyPick pick;
        pick.eta = eta;
        pick.feature_index = decision_strategy(values.reduced, eta);
        pick.feature_name = report.features[pick.feature_index].name;
        report.strategy_picks.push_back(std::move(pick));
    }
    return report;
}

std::string report_to_json(const ExplanationReport& report) {
    nlohmann::json doc;
    doc["schema_version"] = report.schema_version;
    doc["instance"] = report.instance;
    nlohmann::json config;
    config["mode"] = report.mode;
    config["distance"] = report.distance;
    config["bound_method"] = report.bound_method;
    config["epsilon"] = report.epsilon;
    config["epsilon_grid"] = report.epsilon_grid;
    config["seed"] = report.seed;
    config["mc_samples"] = report.mc_samples;
    doc["config"] = std::move(config);
    nlohmann::json features = nlohmann::json::array();
    for (const FeatureExplanation& fe : report.features) {
        nlohmann::json entry;
        entry["name"] = fe.name;
        entry["precise"] = encode_real(fe.precise);
        entry["raw"] = interval_to_json(fe.raw);
        entry["reduced"] = interval_to_json(fe.reduced);
        features.push_back(std::move(entry));
    }
    doc["features"] = std::move(features);
    doc["total_gain"] = interval_to_json(report.total_gain);
    nlohmann::json picks = nlohmann::json::array();
    for (const StrategyPick& pick : report.strategy_picks) {
        picks.push_back(nlohmann::json{{"eta", pick.eta},
                                       {"feature_index", pick.feature_index},
                                       {"feature_name", pick.feature_name}});
    }
    doc["strategy_picks"] = std::move(picks);
    doc["warning"] = report.warning;
    doc["elapsed_ms"] = report.elapsed_ms;
    return doc.dump(2);
}

ExplanationReport report_from_json(const std::string& text) {
    const nlohmann::json doc = nlohmann::json::parse(text);
    ExplanationReport report;
    report.schema_version = doc.at("schema_version").get<int>();
    report.instance = doc.at("instance").get<std::vector<double>>();
    const nlohmann::json& config = doc.at("config");
    report.mode = config.at("mode").get<std::string>();
    report.distance = config.at("distance").get<std::string>();
    report.bound_method = config.at("bound_method").get<std::string>();
    report.epsilon = config.at("epsilon").get<double>();
    report.epsilon_grid = config.at("epsilon_grid").get<std::vector<double>>();
    report.seed = config.at("seed").get<std::uint64_t>();
    report.mc_samples = config.at("mc_samples").get<int>();
    for (const nlohmann::json& entry : doc.at("features")) {
        FeatureExplanation fe;
        fe.name = entry.at("name").get<std::string>();
        fe.precise = decode_real(entry.at("precise"));
        fe.raw = interval_from_json(entry.at("raw"));
        fe.reduced = interval_from_json(entry.at("reduced"));
        report.features.push_back(std::move(fe));
    }
    report.total_gain = interval_from_json(doc.at("total_gain"));
    for (const nlohmann::json& entry : doc.at("strategy_picks")) {
        StrategyPick pick;
        pick.eta = entry.at("eta").get<double>();
        pick.feature_index = entry.at("feature_index").get<std::size_t>();
        pick.feature_name = entry.at("feature_name").get<std::string>();
        report.strategy_picks.push_back(std::move(pick));
    }
    report.warning = doc.at("warning").get<std::string>();
    report.elapsed_ms = doc.at("elapsed_ms").get<double>();
    return report;
}

void save_report(const ExplanationReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << report_to_json(report) << '\n';
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ExplanationReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return report_from_json(buffer.str());
}

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.precision(17);
    out << "feature,epsilon,precise,raw_lo,raw_hi,reduced_lo,reduced_hi\n";
    for (const SweepRow& row : rows) {
        out << row.feature << ',' << row.epsilon << ',' << row.precise << ',' << row.raw.lo << ','
            << row.raw.hi << ',' << row.reduced.lo << ',' << row.reduced.hi << '\n';
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace impshap
