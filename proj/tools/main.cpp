#include <cstring>
#include <iostream>

#include <CLI11.hpp>

#include "infosumm/cli.hpp"

namespace {

// --config is applied before flag parsing so command-line flags win.
std::string config_path_from_argv(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
            return argv[i + 1];
        }
        if (std::strncmp(argv[i], "--config=", 9) == 0) {
            return argv[i] + 9;
        }
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    infosumm::RunConfig config;
    std::string corpus;
    std::string config_path = config_path_from_argv(argc, argv);
    try {
        if (!config_path.empty()) {
            config = infosumm::run_config_from_json_file(config_path);
        }
    } catch (const infosumm::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Summary scoring, greedy extraction and evaluation over unit distributions"};
    app.require_subcommand(1);

    std::string ignored_config;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("corpus", corpus, "topic directory or directory of topics")->required();
        cmd->add_option("--config", ignored_config, "JSON run config (flags override it)");
        cmd->add_option("--units", config.units, "semantic units: words|bigrams");
        cmd->add_option("--stopwords", config.stopword_path, "stopword list file");
        cmd->add_option("--cue-lexicon", config.cue_lexicon_path,
                        "cue lexicon file (word<TAB>weight)");
        cmd->add_option("--gamma", config.gamma, "smoothing mass, in [0,1)");
        cmd->add_option("--alpha", config.alpha, "relevance strength");
        cmd->add_option("--beta", config.beta, "informativeness strength");
        cmd->add_option("--knowledge", config.knowledge,
                        "uniform | background | path to a knowledge text file");
        cmd->add_option("--scorers", config.scorers, "scorers to apply")->delimiter(',');
        cmd->add_option("--out", config.out, "output directory (default: stdout)");
    };

    CLI::App* score = app.add_subcommand("score", "score every candidate with every scorer");
    add_common(score);
    CLI::App* target = app.add_subcommand(
        "target", "dump the importance target, summarizability and potential information");
    add_common(target);
    target->add_option("--top", config.top, "rows per topic");
    CLI::App* summarize =
        app.add_subcommand("summarize", "greedy extractive summaries maximizing theta_i");
    add_common(summarize);
    summarize->add_option("--budget", config.budget, "summary budget in words");
    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "rank correlation against human scores plus reference-vs-system t-test");
    add_common(evaluate);
    evaluate->add_option("--mode", config.mode, "generic|update");
    evaluate->add_option("--tau", config.tau, "Kendall variant: b (tie-corrected) or a");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (score->parsed()) {
            return infosumm::cmd_score(corpus, config);
        }
        if (target->parsed()) {
            return infosumm::cmd_target(corpus, config);
        }
        if (summarize->parsed()) {
            return infosumm::cmd_summarize(corpus, config);
        }
        return infosumm::cmd_evaluate(corpus, config);
    } catch (const infosumm::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
