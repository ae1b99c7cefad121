// Command-line front end: synthetic dataset generation, model training, and
// interval-valued Shapley explanation runs (single epsilon or a sweep grid).

#include <chrono>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "impshap/dataset.hpp"
#include "impshap/divergence.hpp"
#include "impshap/forest.hpp"
#include "impshap/report.hpp"
#include "impshap/shapley.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitComputeFailure = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> values;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t comma = text.find(',', begin);
        const std::string token =
            text.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
        if (token.empty()) throw std::invalid_argument("empty coordinate in point '" + text + "'");
        std::size_t consumed = 0;
        values.push_back(std::stod(token, &consumed));
        if (consumed != token.size()) {
            throw std::invalid_argument("bad coordinate '" + token + "' in point");
        }
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return values;
}

std::vector<double> parse_epsilons(const std::string& text) {
    const std::vector<double> values = parse_point(text);
    for (const double eps : values) {
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw std::invalid_argument("epsilon " + std::to_string(eps) + " outside [0, 1]");
        }
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw std::invalid_argument("epsilon list must be strictly increasing");
        }
    }
    return values;
}

struct ExplainSetup {
    std::string train_path;
    std::string label_column = "label";
    std::string point_text;
    std::string mode_text = "distribution";
    std::string distance_text = "kolmogorov_smirnov";
    std::string method_text = "lp";
    int mc_samples = 1000;
    std::uint64_t seed = 0;
    int trees = 100;
    int depth = 8;
    std::string model_path;       // load a serialized forest instead of training
    std::string save_model_path;  // persist the trained forest

    void register_flags(CLI::App* cmd) {
        cmd->add_option("--train", train_path, "training CSV path")->required();
        cmd->add_option("--label", label_column, "label column name");
        cmd->add_option("--point", point_text, "instance to explain, e.g. \"1.5,2.5\"")
            ->required();
        cmd->add_option("--mode", mode_text, "distribution | class | certainty");
        cmd->add_option("--distance", distance_text, "ks | kl | chi2");
        cmd->add_option("--method", method_text, "lp | mc");
        cmd->add_option("--samples", mc_samples, "Monte-Carlo sample count");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--trees", trees, "forest size");
        cmd->add_option("--depth", depth, "maximal tree depth");
        cmd->add_option("--model", model_path, "load a serialized forest instead of training");
        cmd->add_option("--save-model", save_model_path, "write the trained forest as JSON");
    }
};

struct PreparedRun {
    std::unique_ptr<impshap::RandomForestModel> model;
    std::vector<double> point;
    std::vector<double> baseline;
    std::vector<std::string> feature_names;
    impshap::ExplanationConfig config;
};

// Everything that can be rejected before computation starts; throws
// std::invalid_argument for usage problems.
PreparedRun prepare(const ExplainSetup& setup) {
    PreparedRun run;
    run.point = parse_point(setup.point_text);

    const impshap::Dataset train = impshap::load_csv(setup.train_path, setup.label_column);
    if (run.point.size() != train.cols()) {
        throw std::invalid_argument("point has " + std::to_string(run.point.size()) +
                                    " coordinates but the training data has " +
                                    std::to_string(train.cols()) + " feature columns");
    }
    run.baseline = train.feature_means;
    run.feature_names = train.feature_names;

    const auto mode = impshap::mode_from_string(setup.mode_text);
    if (!mode) throw std::invalid_argument("unknown mode '" + setup.mode_text + "'");
    const auto distance = impshap::divergence_from_string(setup.distance_text);
    if (!distance) throw std::invalid_argument("unknown distance '" + setup.distance_text + "'");
    const auto method = impshap::method_from_string(setup.method_text);
    if (!method) throw std::invalid_argument("unknown method '" + setup.method_text + "'");
    run.config.mode = *mode;
    run.config.distance = *distance;
    run.config.bound_method = *method;
    run.config.mc_samples = setup.mc_samples;
    run.config.seed = setup.seed;

    if (!setup.model_path.empty()) {
        run.model = std::make_unique<impshap::RandomForestModel>(
            impshap::load_forest(setup.model_path));
        if (run.model->feature_count() != train.cols()) {
            throw std::invalid_argument("serialized forest expects " +
                                        std::to_string(run.model->feature_count()) +
                                        " features, training data has " +
                                        std::to_string(train.cols()));
        }
    } else {
        impshap::ForestOptions options;
        options.tree_count = setup.trees;
        options.max_depth = setup.depth;
        options.seed = setup.seed;
        run.model = std::make_unique<impshap::RandomForestModel>(
            impshap::fit_random_forest(train, options));
    }
    if (!setup.save_model_path.empty()) {
        impshap::save_forest(*run.model, setup.save_model_path);
    }
    return run;
}

int cmd_generate(const std::string& dataset_text, std::uint64_t seed, const std::string& out_dir) {
    const auto kind = impshap::synthetic_from_string(dataset_text);
    if (!kind) {
        std::cerr << "error: unknown dataset tag '" << dataset_text << "'\n";
        return kExitUsage;
    }
    try {
        const impshap::SyntheticSplit split = impshap::generate_dataset(*kind, seed);
        std::filesystem::create_directories(out_dir);
        const std::string train_path = (std::filesystem::path(out_dir) / "train.csv").string();
        const std::string test_path = (std::filesystem::path(out_dir) / "test.csv").string();
        impshap::write_csv(split.train, train_path);
        impshap::write_csv(split.test, test_path);
        std::cout << "wrote " << split.train.rows() << " rows to " << train_path << " and "
                  << split.test.rows() << " rows to " << test_path << "\n";
        return kExitSuccess;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeFailure;
    }
}

int cmd_explain(const ExplainSetup& setup, double epsilon, std::optional<double> extra_eta,
                const std::string& out_path) {
    PreparedRun run;
    try {
        run = prepare(setup);
        run.config.epsilon = epsilon;
        impshap::validate(run.config);
        if (extra_eta && !(*extra_eta >= 0.0 && *extra_eta <= 1.0)) {
            throw std::invalid_argument("eta must lie in [0, 1]");
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        const auto started = std::chrono::steady_clock::now();
        impshap::CoalitionContext ctx(*run.model, run.point, run.baseline);
        const impshap::ShapleyIntervalSet values = impshap::imprecise_shapley(ctx, run.config);
        const double elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                .count();

        std::vector<double> etas{0.0, 0.5, 1.0};
        if (extra_eta &&
            std::find(etas.begin(), etas.end(), *extra_eta) == etas.end()) {
            etas.push_back(*extra_eta);
        }
        impshap::ExplanationReport report = impshap::build_report(
            run.point, run.feature_names, run.config, values, etas, elapsed_ms);
        impshap::save_report(report, out_path);

        for (const impshap::FeatureExplanation& fe : report.features) {
            std::cout << fe.name << ": precise " << fe.precise << ", raw [" << fe.raw.lo << ", "
                      << fe.raw.hi << "], reduced [" << fe.reduced.lo << ", " << fe.reduced.hi
                      << "]\n";
        }
        if (!report.warning.empty()) std::cout << "warning: " << report.warning << "\n";
        std::cout << "report written to " << out_path << "\n";
        return kExitSuccess;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeFailure;
    }
}

int cmd_sweep(const ExplainSetup& setup, const std::string& epsilons_text,
              const std::string& out_path) {
    PreparedRun run;
    std::vector<double> epsilons;
    try {
        epsilons = parse_epsilons(epsilons_text);
        if (epsilons.empty()) throw std::invalid_argument("epsilon list is empty");
        run = prepare(setup);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        impshap::CoalitionContext ctx(*run.model, run.point, run.baseline);
        std::vector<impshap::ShapleyIntervalSet> per_epsilon;
        per_epsilon.reserve(epsilons.size());
        for (const double eps : epsilons) {
            impshap::ExplanationConfig config = run.config;
            config.epsilon = eps;
            impshap::validate(config);
            per_epsilon.push_back(impshap::imprecise_shapley(ctx, config));
        }
        std::vector<impshap::SweepRow> rows;
        rows.reserve(run.point.size() * epsilons.size());
        for (std::size_t f = 0; f < run.point.size(); ++f) {
            for (std::size_t e = 0; e < epsilons.size(); ++e) {
                impshap::SweepRow row;
                row.feature = run.feature_names[f];
                row.epsilon = epsilons[e];
                row.precise = per_epsilon[e].precise[f];
                row.raw = per_epsilon[e].raw[f];
                row.reduced = per_epsilon[e].reduced[f];
                rows.push_back(std::move(row));
            }
        }
        impshap::save_sweep_csv(rows, out_path);
        std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
        return kExitSuccess;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputeFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval-valued Shapley explanations for class probability predictions"};
    app.require_subcommand(1);

    auto* generate = app.add_subcommand("generate", "write a synthetic train/test CSV pair");
    std::string dataset_text;
    std::uint64_t generate_seed = 0;
    std::string generate_out;
    generate->add_option("--dataset", dataset_text, "circle | gauss_rings | clusters")
        ->required();
    generate->add_option("--seed", generate_seed, "RNG seed");
    generate->add_option("--out", generate_out, "output directory")->required();

    auto* explain = app.add_subcommand("explain", "explain one instance");
    ExplainSetup explain_setup;
    explain_setup.register_flags(explain);
    double epsilon = 0.0;
    std::optional<double> extra_eta;
    std::string explain_out;
    explain->add_option("--epsilon", epsilon, "contamination parameter in [0, 1]");
    explain->add_option("--eta", extra_eta, "extra decision-strategy weight to report");
    explain->add_option("--out", explain_out, "JSON report path")->required();

    auto* sweep = app.add_subcommand("sweep", "explain one instance over an epsilon grid");
    ExplainSetup sweep_setup;
    sweep_setup.register_flags(sweep);
    std::string epsilons_text;
    std::string sweep_out;
    sweep->add_option("--epsilons", epsilons_text, "strictly increasing list, e.g. \"0,0.05,0.1\"")
        ->required();
    sweep->add_option("--out", sweep_out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (generate->parsed()) return cmd_generate(dataset_text, generate_seed, generate_out);
    if (explain->parsed()) return cmd_explain(explain_setup, epsilon, extra_eta, explain_out);
    if (sweep->parsed()) return cmd_sweep(sweep_setup, epsilons_text, sweep_out);
    std::cerr << "error: no subcommand given\n";
    return kExitUsage;
}
