#pragma once

#include <map>

#include "infosumm/baselines.hpp"
#include "infosumm/importance.hpp"

namespace infosumm {

struct Budget {
    int max_words = 100;
};

struct ExtractStep {
    int sentence_id = 0;   // index into the flattened source sentence list
    Bits theta = 0.0;      // θ_I of the summary after this step
    double margin = 0.0;   // θ gap over the runner-up (0 when none existed)
};

struct ExtractTrace {
    std::vector<ExtractStep> steps;
};

struct ExtractResult {
    std::vector<Sentence> sentences;  // selection order
    ExtractTrace trace;
};

// Greedy extraction: repeatedly add the source sentence that maximizes θ_I
// of the grown summary, within the word budget; stop when nothing fits or
// nothing improves θ_I. Ties break toward the earlier (document, position).
ExtractResult extract(const Topic& topic, const ImportanceTarget& target, Budget budget);

enum class KnowledgeMode { Uniform, Background, File };

// Shared configuration for a scoring run; one instance covers every scorer
// so all candidates are judged under identical tokenization and smoothing.
struct ScoreOptions {
    double gamma = 1e-6;
    ImportanceParams params;
    KnowledgeMode knowledge = KnowledgeMode::Uniform;
    std::filesystem::path knowledge_path;  // KnowledgeMode::File
    EdmundsonWeights edmundson;
    std::shared_ptr<const CueLexicon> cue_lexicon;
    std::shared_ptr<const StopwordSet> stopwords;
    double lexrank_damping = 0.85;
    double lexrank_threshold = 0.1;
    int icsi_min_df = 2;
    bool back_positive = true;  // sign convention for kl_back / js_back
    bool tau_b = true;          // tie-corrected Kendall tau; false = tau-a
};

// Everything derived from one topic that scorers need: the vocabulary, the
// raw and smoothed source distributions, the knowledge distribution, and
// the smoothed importance target.
struct TopicModel {
    std::shared_ptr<const Vocabulary> vocab;
    UnitDistribution source;           // P_D, raw
    UnitDistribution source_smoothed;  // second-argument form for CE/KL
    UnitDistribution knowledge;        // P_K, strictly positive
    ImportanceTarget target;           // smoothed P_{D/K}
    Bits potential_info = 0.0;         // CE(P_D, P_K) diagnostic
};

TopicModel build_topic_model(const Topic& topic, const ScoreOptions& opts);

// Registered scorer names, in report order.
const std::vector<std::string>& available_scorers();

struct ScoredSummary {
    std::string system_id;
    std::map<std::string, double> scores;  // scorer name -> value
};

// Scores one summary (given as parsed sentences) under one scorer.
double score_summary(const std::string& scorer, const std::vector<Sentence>& sentences,
                     const Topic& topic, const TopicModel& model, const ScoreOptions& opts);

// Applies every requested scorer to every candidate of the topic.
std::vector<ScoredSummary> score_all(const Topic& topic, const TopicModel& model,
                                     const std::vector<std::string>& scorers,
                                     const ScoreOptions& opts);

}  // namespace infosumm
