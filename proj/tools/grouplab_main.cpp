#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouplab/experiments.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"grouplab: experiments on compact subgroups of concrete compact groups"};
    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    bool list = false;
    app.add_option("--config", config_path, "experiment config JSON file");
    app.add_option("--seed", seed, "override the config seed");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_flag("--list-experiments", list, "print the experiment names and exit");
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto& name : grouplab::list_experiments()) std::cout << name << "\n";
        return 0;
    }
    if (config_path.empty()) {
        std::cerr << "error: --config is required (or use --list-experiments)\n";
        return 2;
    }

    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    grouplab::ExperimentConfig cfg;
    try {
        cfg = grouplab::parse_experiment_config(buf.str());
    } catch (const grouplab::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    }
    if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (const char* env = std::getenv("GROUPLAB_OUT"); env && out_dir.empty())
        cfg.output_dir = env;

    grouplab::ExperimentOutcome outcome;
    try {
        outcome = grouplab::run_experiment(cfg);
    } catch (const grouplab::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        nlohmann::json err;
        err["error"] = ex.what();
        err["experiment"] = cfg.experiment;
        err["config_hash"] = grouplab::config_hash(cfg);
        fs::create_directories(cfg.output_dir);
        std::ofstream out(fs::path(cfg.output_dir) / "error.json");
        out << err.dump(2) << "\n";
        std::cerr << "experiment failed: " << ex.what() << "\n";
        return 1;
    }

    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    for (const auto& artifact : outcome.artifacts) {
        fs::path path = fs::path(cfg.output_dir) / artifact.filename;
        std::ofstream out(path);
        if (!out) {
            std::cerr << "error: cannot write '" << path.string() << "'\n";
            return 1;
        }
        out << artifact.content;
        std::cout << "wrote " << path.string() << "\n";
    }
    std::cout << outcome.summary << "\n";
    return outcome.exit_code;
}
