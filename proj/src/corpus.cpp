#include "infosumm/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace infosumm {

namespace fs = std::filesystem;

namespace {

bool is_unit_char(unsigned char c) {
    return std::isalnum(c) != 0 || c >= 0x80;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// *.txt files of a directory, sorted by filename for determinism.
std::vector<fs::path> text_files(const fs::path& dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(dir)) {
        return files;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::vector<Document> load_documents(const fs::path& dir, const TokenizeConfig& config) {
    std::vector<Document> docs;
    for (const auto& file : text_files(dir)) {
        Document doc;
        doc.name = file.stem().string();
        std::string raw = read_file(file);
        doc.first_line = raw.substr(0, raw.find('\n'));
        doc.sentences = split_sentences(raw, config, static_cast<int>(docs.size()));
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizeConfig& config) {
    if (config.ngram != 1 && config.ngram != 2) {
        throw std::invalid_argument("ngram order must be 1 or 2");
    }
    std::vector<std::string> words;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    };
    for (unsigned char c : text) {
        if (is_unit_char(c)) {
            current.push_back(config.lowercase && c < 0x80
                                  ? static_cast<char>(std::tolower(c))
                                  : static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();

    if (config.filter_stopwords && config.stopwords) {
        std::erase_if(words, [&](const std::string& w) { return config.stopwords->count(w) > 0; });
    }
    if (config.ngram == 1) {
        return words;
    }
    std::vector<std::string> ngrams;
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
        ngrams.push_back(words[i] + kNgramSeparator + words[i + 1]);
    }
    return ngrams;
}

std::shared_ptr<const StopwordSet> load_stopwords(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read stopword list " + path.string());
    }
    auto set = std::make_shared<StopwordSet>();
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
            line.pop_back();
        }
        if (!line.empty()) {
            set->insert(line);
        }
    }
    return set;
}

std::shared_ptr<const Vocabulary> Vocabulary::build(
    const std::vector<std::vector<std::string>>& texts) {
    auto vocab = std::make_shared<Vocabulary>();
    for (const auto& text : texts) {
        for (const auto& unit : text) {
            if (vocab->index_.emplace(unit, static_cast<std::uint32_t>(vocab->units_.size()))
                    .second) {
                vocab->units_.push_back(unit);
            }
        }
    }
    return vocab;
}

std::optional<std::uint32_t> Vocabulary::id_of(std::string_view unit) const {
    auto it = index_.find(std::string(unit));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

UnitDistribution::UnitDistribution(std::shared_ptr<const Vocabulary> vocab,
                                   std::vector<double> mass)
    : vocab_(std::move(vocab)), mass_(std::move(mass)) {
    if (mass_.empty()) {
        throw std::invalid_argument("empty distribution");
    }
    if (vocab_ && vocab_->size() != mass_.size()) {
        throw std::invalid_argument("mass size does not match vocabulary size");
    }
    double sum = 0.0;
    strictly_positive_ = true;
    for (double m : mass_) {
        if (!(m >= 0.0) || !std::isfinite(m)) {
            throw std::invalid_argument("distribution mass must be finite and non-negative");
        }
        strictly_positive_ = strictly_positive_ && m > 0.0;
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("distribution mass must sum to 1");
    }
}

UnitDistribution UnitDistribution::from_mass(std::vector<double> mass) {
    return UnitDistribution(nullptr, std::move(mass));
}

void require_same_space(const UnitDistribution& a, const UnitDistribution& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distributions live in different unit spaces");
    }
    if (a.vocab() && b.vocab() && a.vocab() != b.vocab()) {
        throw std::invalid_argument("distributions built over different vocabularies");
    }
}

UnitDistribution distribution_of(const std::vector<std::vector<std::string>>& texts,
                                 std::shared_ptr<const Vocabulary> vocab) {
    std::vector<double> counts(vocab->size(), 0.0);
    double total = 0.0;
    for (const auto& text : texts) {
        for (const auto& unit : text) {
            auto id = vocab->id_of(unit);
            if (!id) {
                throw std::invalid_argument("unit not in vocabulary: " + unit);
            }
            counts[*id] += 1.0;
            total += 1.0;
        }
    }
    if (total == 0.0) {
        throw std::invalid_argument("empty distribution");
    }
    for (double& c : counts) {
        c /= total;
    }
    return UnitDistribution(std::move(vocab), std::move(counts));
}

UnitDistribution smooth(const UnitDistribution& p, double gamma) {
    if (!(gamma >= 0.0) || gamma >= 1.0) {
        throw std::invalid_argument("smoothing gamma must lie in [0, 1)");
    }
    if (gamma == 0.0) {
        return p;
    }
    const double uniform = gamma / static_cast<double>(p.size());
    std::vector<double> mass(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        mass[i] = (1.0 - gamma) * p[i] + uniform;
    }
    return UnitDistribution(p.vocab(), std::move(mass));
}

UnitDistribution uniform_over_support(const UnitDistribution& p) {
    std::size_t support = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        support += p[i] > 0.0;
    }
    if (support == 0) {
        throw std::invalid_argument("distribution has empty support");
    }
    std::vector<double> mass(p.size(), 0.0);
    const double share = 1.0 / static_cast<double>(support);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            mass[i] = share;
        }
    }
    return UnitDistribution(p.vocab(), std::move(mass));
}

std::vector<Sentence> split_sentences(std::string_view text, const TokenizeConfig& config,
                                      int doc_id) {
    std::vector<Sentence> sentences;
    TokenizeConfig word_config = config;
    word_config.ngram = 1;
    word_config.filter_stopwords = false;

    auto emit = [&](std::string_view raw) {
        // trim surrounding whitespace
        std::size_t b = raw.find_first_not_of(" \t\r\n");
        if (b == std::string_view::npos) {
            return;
        }
        std::size_t e = raw.find_last_not_of(" \t\r\n");
        raw = raw.substr(b, e - b + 1);
        Sentence s;
        s.text = std::string(raw);
        s.words = tokenize(raw, word_config);
        s.units = tokenize(raw, config);
        if (s.units.empty()) {
            return;  // dropped at ingestion
        }
        s.doc_id = doc_id;
        s.position = static_cast<int>(sentences.size());
        sentences.push_back(std::move(s));
    };

    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' || c == '!' || c == '?') {
            std::size_t j = i;
            while (j + 1 < text.size() &&
                   (text[j + 1] == '.' || text[j + 1] == '!' || text[j + 1] == '?')) {
                ++j;
            }
            if (j + 1 >= text.size() || std::isspace(static_cast<unsigned char>(text[j + 1]))) {
                emit(text.substr(start, j + 1 - start));
                start = j + 1;
            }
            i = j;
        }
    }
    if (start < text.size()) {
        emit(text.substr(start));
    }
    return sentences;
}

Topic load_topic(const fs::path& dir, const TokenizeConfig& config) {
    if (!fs::is_directory(dir)) {
        throw InputError("topic directory not found: " + dir.string());
    }
    Topic topic;
    topic.id = dir.filename().string();
    topic.config = config;
    topic.source_docs = load_documents(dir / "docs", config);
    if (topic.source_docs.empty()) {
        throw InputError("topic " + topic.id + ": missing source docs under " +
                         (dir / "docs").string());
    }
    topic.background_docs = load_documents(dir / "background", config);

    for (const auto& file : text_files(dir / "refs")) {
        Reference ref;
        ref.text = read_file(file);
        ref.sentences = split_sentences(ref.text, config, 0);
        if (ref.sentences.empty()) {
            std::cerr << "warning: topic " << topic.id << ": reference " << file.filename()
                      << " has no units, skipped\n";
            continue;
        }
        topic.references.push_back(std::move(ref));
    }

    for (const auto& file : text_files(dir / "systems")) {
        Candidate cand;
        cand.system_id = file.stem().string();
        cand.text = read_file(file);
        cand.sentences = split_sentences(cand.text, config, 0);
        if (cand.sentences.empty()) {
            std::cerr << "warning: topic " << topic.id << ": candidate " << cand.system_id
                      << " has no units, skipped\n";
            continue;
        }
        topic.candidates.push_back(std::move(cand));
    }

    const fs::path scores_path = dir / "scores.tsv";
    if (fs::is_regular_file(scores_path)) {
        std::ifstream in(scores_path);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) {
                continue;
            }
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos) {
                throw InputError("malformed scores file " + scores_path.string() + " line " +
                                 std::to_string(line_no) + ": expected system_id<TAB>score");
            }
            std::string system_id = line.substr(0, tab);
            double score = 0.0;
            try {
                std::size_t used = 0;
                score = std::stod(line.substr(tab + 1), &used);
                if (used != line.size() - tab - 1 || !std::isfinite(score)) {
                    throw std::invalid_argument("trailing junk or non-finite");
                }
            } catch (const std::exception&) {
                throw InputError("malformed scores file " + scores_path.string() + " line " +
                                 std::to_string(line_no) + ": bad score value");
            }
            auto it = std::find_if(topic.candidates.begin(), topic.candidates.end(),
                                   [&](const Candidate& c) { return c.system_id == system_id; });
            if (it == topic.candidates.end()) {
                std::cerr << "warning: " << scores_path << " line " << line_no
                          << ": unknown system " << system_id << "\n";
                continue;
            }
            it->human_score = score;
        }
    }
    return topic;
}

std::vector<std::vector<std::string>> unit_sequences(const std::vector<Document>& docs) {
    std::vector<std::vector<std::string>> out;
    for (const auto& doc : docs) {
        for (const auto& sentence : doc.sentences) {
            out.push_back(sentence.units);
        }
    }
    return out;
}

std::vector<std::vector<std::string>> unit_sequences(const std::vector<Sentence>& sentences) {
    std::vector<std::vector<std::string>> out;
    out.reserve(sentences.size());
    for (const auto& sentence : sentences) {
        out.push_back(sentence.units);
    }
    return out;
}

std::vector<Sentence> all_source_sentences(const Topic& topic) {
    std::vector<Sentence> out;
    for (const auto& doc : topic.source_docs) {
        out.insert(out.end(), doc.sentences.begin(), doc.sentences.end());
    }
    return out;
}

std::shared_ptr<const Vocabulary> topic_vocabulary(const Topic& topic) {
    std::vector<std::vector<std::string>> all = unit_sequences(topic.source_docs);
    auto append = [&](std::vector<std::vector<std::string>> more) {
        for (auto& seq : more) {
            all.push_back(std::move(seq));
        }
    };
    append(unit_sequences(topic.background_docs));
    for (const auto& cand : topic.candidates) {
        append(unit_sequences(cand.sentences));
    }
    for (const auto& ref : topic.references) {
        append(unit_sequences(ref.sentences));
    }
    return Vocabulary::build(all);
}

}  // namespace infosumm
