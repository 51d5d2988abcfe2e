#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace infosumm {

// Unusable user input (missing files, malformed config). The CLI maps this
// to exit code 2; every other exception maps to 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using StopwordSet = std::unordered_set<std::string>;

// Joins the tokens of one n-gram.
inline constexpr char kNgramSeparator = '_';

struct TokenizeConfig {
    int ngram = 1;                  // 1 = words, 2 = adjacent word pairs
    bool lowercase = true;
    bool filter_stopwords = false;  // unit extraction keeps stopwords by default
    std::shared_ptr<const StopwordSet> stopwords;
};

// Splits text into lowercased alphanumeric runs (bytes >= 0x80 are kept, so
// UTF-8 words survive untouched), drops stopwords if configured, then forms
// contiguous n-grams. Empty input yields an empty sequence.
std::vector<std::string> tokenize(std::string_view text, const TokenizeConfig& config);

std::shared_ptr<const StopwordSet> load_stopwords(const std::filesystem::path& path);

// The unit space Ω shared by every distribution of one topic. Ids are dense,
// assigned in first-occurrence order, so rebuilding from the same texts gives
// an identical vocabulary.
class Vocabulary {
public:
    static std::shared_ptr<const Vocabulary> build(
        const std::vector<std::vector<std::string>>& texts);

    std::optional<std::uint32_t> id_of(std::string_view unit) const;
    const std::string& unit(std::uint32_t id) const { return units_.at(id); }
    std::size_t size() const { return units_.size(); }

private:
    std::vector<std::string> units_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Immutable probability mass function over a vocabulary's unit ids.
// Every constructed instance sums to 1 within 1e-9 and has no negative mass.
class UnitDistribution {
public:
    UnitDistribution(std::shared_ptr<const Vocabulary> vocab, std::vector<double> mass);

    // Anonymous unit space, mostly for tests and small tools.
    static UnitDistribution from_mass(std::vector<double> mass);

    std::size_t size() const { return mass_.size(); }
    double operator[](std::size_t i) const { return mass_[i]; }
    const std::vector<double>& mass() const { return mass_; }
    const std::shared_ptr<const Vocabulary>& vocab() const { return vocab_; }
    bool strictly_positive() const { return strictly_positive_; }

private:
    std::shared_ptr<const Vocabulary> vocab_;  // null for anonymous spaces
    std::vector<double> mass_;
    bool strictly_positive_ = false;
};

// Throws std::invalid_argument unless a and b live in the same unit space.
void require_same_space(const UnitDistribution& a, const UnitDistribution& b);

// Normalized unit counts over the given sequences. Every unit must be known
// to the vocabulary; all-empty input is an error ("empty distribution").
UnitDistribution distribution_of(const std::vector<std::vector<std::string>>& texts,
                                 std::shared_ptr<const Vocabulary> vocab);

// (1-gamma)*p + gamma/|Ω|. gamma = 0 returns p unchanged, bit for bit.
UnitDistribution smooth(const UnitDistribution& p, double gamma);

// 1/n on the n units with positive mass, 0 elsewhere.
UnitDistribution uniform_over_support(const UnitDistribution& p);

struct Sentence {
    std::string text;                 // original surface form
    std::vector<std::string> words;   // word tokens, stopwords kept
    std::vector<std::string> units;   // unit tokens per config
    int doc_id = 0;
    int position = 0;                 // sentence index within its document

    std::size_t word_count() const { return words.size(); }
};

struct Document {
    std::string name;
    std::string first_line;  // headline proxy for title-based features
    std::vector<Sentence> sentences;
};

struct Candidate {
    std::string system_id;
    std::string text;
    std::vector<Sentence> sentences;
    std::optional<double> human_score;
};

struct Reference {
    std::string text;
    std::vector<Sentence> sentences;
};

// One summarization instance: source documents, optional background documents
// (update task), candidate summaries with optional human scores, references.
struct Topic {
    std::string id;
    std::vector<Document> source_docs;
    std::vector<Document> background_docs;  // empty when the topic has none
    std::vector<Candidate> candidates;
    std::vector<Reference> references;
    TokenizeConfig config;                  // tokenization the topic was built with

    bool has_background() const { return !background_docs.empty(); }
};

// Splits on terminal punctuation (.!?) followed by whitespace; sentences with
// no units after tokenization are dropped.
std::vector<Sentence> split_sentences(std::string_view text, const TokenizeConfig& config,
                                      int doc_id);

// Loads `<dir>/docs/*.txt`, optional `background/`, `refs/`, `systems/` and
// `scores.tsv` (system_id<TAB>score). Files are read in filename order.
Topic load_topic(const std::filesystem::path& dir, const TokenizeConfig& config = {});

// Union vocabulary over sources, background, candidates and references,
// in that order (first occurrence wins), so |Ω| is fixed per topic.
std::shared_ptr<const Vocabulary> topic_vocabulary(const Topic& topic);

// Unit sequences of a document list, one sequence per sentence.
std::vector<std::vector<std::string>> unit_sequences(const std::vector<Document>& docs);
std::vector<std::vector<std::string>> unit_sequences(const std::vector<Sentence>& sentences);

// Source sentences flattened in (document, position) order.
std::vector<Sentence> all_source_sentences(const Topic& topic);

}  // namespace infosumm
