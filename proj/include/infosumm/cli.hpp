#pragma once

#include "infosumm/evalharness.hpp"

namespace infosumm {

// One reproducible run. Serializable to and from JSON; the resolved config
// is embedded in every output (as a `# config:` line in TSV, a "config"
// field in JSON) so runs can be replayed byte for byte.
struct RunConfig {
    std::string units = "words";  // words | bigrams
    std::string stopword_path;
    std::string cue_lexicon_path;
    bool filter_stopword_units = false;  // stopword filtering for unit extraction
    double gamma = 1e-6;
    double alpha = 1.0;
    double beta = 1.0;
    std::string knowledge = "uniform";  // uniform | background | <text file path>
    int budget = 100;
    std::vector<std::string> scorers;  // empty = every registered scorer
    std::string mode = "generic";      // generic | update (evaluate)
    std::string tau = "b";             // Kendall variant: b (tie-corrected) | a
    int top = 50;                      // row cap for `target`
    std::string out;                   // output directory; empty = stdout
    // baseline knobs, settable through the config file
    double lexrank_damping = 0.85;
    double lexrank_threshold = 0.1;
    int icsi_min_df = 2;
};

std::string run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json_file(const std::filesystem::path& path);

// Resolved, validated form of a RunConfig. Throws InputError on bad values.
struct ResolvedConfig {
    TokenizeConfig tokenize;
    ScoreOptions options;
    std::vector<std::string> scorers;
    EvalMode mode = EvalMode::Generic;
    RunConfig raw;
};
ResolvedConfig resolve_config(const RunConfig& config);

// `corpus_dir` is either one topic directory (contains docs/) or a directory
// of topic directories. Topics come back sorted by name.
std::vector<std::filesystem::path> discover_topics(const std::filesystem::path& corpus_dir);

// Subcommand bodies. All return 0; failures are exceptions, which the CLI
// front end maps to exit codes (InputError -> 2, anything else -> 1).
int cmd_score(const std::filesystem::path& corpus_dir, const RunConfig& config);
int cmd_target(const std::filesystem::path& corpus_dir, const RunConfig& config);
int cmd_summarize(const std::filesystem::path& corpus_dir, const RunConfig& config);
int cmd_evaluate(const std::filesystem::path& corpus_dir, const RunConfig& config);

}  // namespace infosumm
