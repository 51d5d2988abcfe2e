#include "infosumm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>

namespace infosumm {

namespace {

using CountMap = std::unordered_map<std::string, double>;

CountMap unit_counts(const Sentence& sentence) {
    CountMap counts;
    for (const auto& unit : sentence.units) {
        counts[unit] += 1.0;
    }
    return counts;
}

double cosine(const CountMap& a, const CountMap& b) {
    const CountMap& small = a.size() <= b.size() ? a : b;
    const CountMap& large = a.size() <= b.size() ? b : a;
    double dot = 0.0;
    for (const auto& [unit, count] : small) {
        auto it = large.find(unit);
        if (it != large.end()) {
            dot += count * it->second;
        }
    }
    if (dot == 0.0) {
        return 0.0;
    }
    auto norm = [](const CountMap& m) {
        double sq = 0.0;
        for (const auto& [unit, count] : m) {
            sq += count * count;
        }
        return std::sqrt(sq);
    };
    return dot / (norm(a) * norm(b));
}

// Bigrams over word tokens, within one sentence.
std::vector<std::string> word_bigrams(const Sentence& sentence) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i + 1 < sentence.words.size(); ++i) {
        out.push_back(sentence.words[i] + kNgramSeparator + sentence.words[i + 1]);
    }
    return out;
}

}  // namespace

CueLexicon load_cue_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read cue lexicon " + path.string());
    }
    CueLexicon lexicon;
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
            throw InputError("malformed cue lexicon " + path.string() + " line " +
                             std::to_string(line_no));
        }
        lexicon[line.substr(0, tab)] = std::stod(line.substr(tab + 1));
    }
    return lexicon;
}

double score_edmundson(const std::vector<Sentence>& summary, const Topic& topic,
                       const EdmundsonWeights& weights, const CueLexicon* cue_lexicon,
                       const StopwordSet& stopwords) {
    if ((cue_lexicon == nullptr || cue_lexicon->empty()) && weights.cue != 0.0) {
        static std::once_flag warned;
        std::call_once(warned, [] {
            std::cerr << "warning: no cue lexicon given; cue feature contributes 0\n";
        });
    }

    // word frequency over all source documents
    CountMap source_freq;
    for (const auto& doc : topic.source_docs) {
        for (const auto& sentence : doc.sentences) {
            for (const auto& word : sentence.words) {
                source_freq[word] += 1.0;
            }
        }
    }

    StopwordSet title_words;
    if (!topic.source_docs.empty()) {
        TokenizeConfig word_config = topic.config;
        word_config.ngram = 1;
        word_config.filter_stopwords = false;
        for (const auto& word : tokenize(topic.source_docs.front().first_line, word_config)) {
            if (stopwords.count(word) == 0) {
                title_words.insert(word);
            }
        }
    }

    // sentences-per-document counts, for the distance-from-end term
    std::map<int, int> doc_sizes;
    for (const auto& sentence : summary) {
        doc_sizes[sentence.doc_id] = std::max(doc_sizes[sentence.doc_id], sentence.position + 1);
    }

    double total = 0.0;
    for (const auto& sentence : summary) {
        double cue = 0.0;
        double key = 0.0;
        double title = 0.0;
        for (const auto& word : sentence.words) {
            if (cue_lexicon != nullptr) {
                auto it = cue_lexicon->find(word);
                if (it != cue_lexicon->end()) {
                    cue += it->second;
                }
            }
            if (stopwords.count(word) == 0) {
                auto freq = source_freq.find(word);
                if (freq != source_freq.end()) {
                    key += freq->second;
                }
                title += title_words.count(word) > 0 ? 1.0 : 0.0;
            }
        }
        const int last = doc_sizes[sentence.doc_id] - 1;
        const double location =
            1.0 / (1.0 + sentence.position) + 1.0 / (1.0 + (last - sentence.position));
        total += weights.cue * cue + weights.key * key + weights.title * title +
                 weights.location * location;
    }
    return total;
}

SentenceGraph build_sentence_graph(const std::vector<Sentence>& sentences, double threshold) {
    SentenceGraph graph;
    graph.node_count = sentences.size();
    graph.threshold = threshold;
    graph.adjacency.resize(sentences.size());

    std::vector<CountMap> counts;
    counts.reserve(sentences.size());
    for (const auto& sentence : sentences) {
        counts.push_back(unit_counts(sentence));
    }
    for (std::uint32_t i = 0; i < sentences.size(); ++i) {
        for (std::uint32_t j = i + 1; j < sentences.size(); ++j) {
            if (cosine(counts[i], counts[j]) > threshold) {
                graph.adjacency[i].push_back(j);
                graph.adjacency[j].push_back(i);
            }
        }
    }
    return graph;
}

std::vector<double> pagerank(const SentenceGraph& graph, double damping, double tol,
                             int max_iter) {
    const std::size_t n = graph.node_count;
    if (n == 0) {
        return {};
    }
    std::vector<double> pr(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (graph.adjacency[i].empty()) {
                dangling += pr[i];
            }
        }
        const double base = (1.0 - damping) / static_cast<double>(n) +
                            damping * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (std::size_t j = 0; j < n; ++j) {
            const auto& neighbors = graph.adjacency[j];
            if (neighbors.empty()) {
                continue;
            }
            const double share = damping * pr[j] / static_cast<double>(neighbors.size());
            for (std::uint32_t i : neighbors) {
                next[i] += share;
            }
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            change += std::abs(next[i] - pr[i]);
        }
        pr.swap(next);
        if (change < tol) {
            break;
        }
    }
    return pr;
}

double score_lexrank(const std::vector<Sentence>& summary, const Topic& topic, double damping,
                     double threshold) {
    const std::vector<Sentence> sources = all_source_sentences(topic);
    if (sources.empty()) {
        throw std::invalid_argument("lexrank needs at least one source sentence");
    }
    const SentenceGraph graph = build_sentence_graph(sources, threshold);
    const std::vector<double> pr = pagerank(graph, damping);

    std::vector<CountMap> source_counts;
    source_counts.reserve(sources.size());
    for (const auto& sentence : sources) {
        source_counts.push_back(unit_counts(sentence));
    }

    double total = 0.0;
    for (const auto& sentence : summary) {
        std::size_t match = sources.size();
        for (std::size_t i = 0; i < sources.size(); ++i) {
            if (sources[i].units == sentence.units) {
                match = i;
                break;
            }
        }
        if (match == sources.size()) {
            // nearest source sentence by cosine; first index wins ties
            const CountMap counts = unit_counts(sentence);
            double best = -1.0;
            for (std::size_t i = 0; i < sources.size(); ++i) {
                const double sim = cosine(counts, source_counts[i]);
                if (sim > best) {
                    best = sim;
                    match = i;
                }
            }
        }
        total += pr[match];
    }
    return total;
}

double score_icsi(const std::vector<Sentence>& summary, const Topic& topic, int min_df) {
    // document frequency of every source bigram
    std::unordered_map<std::string, int> doc_freq;
    for (const auto& doc : topic.source_docs) {
        StopwordSet seen;
        for (const auto& sentence : doc.sentences) {
            for (auto& bigram : word_bigrams(sentence)) {
                seen.insert(std::move(bigram));
            }
        }
        for (const auto& bigram : seen) {
            ++doc_freq[bigram];
        }
    }

    StopwordSet counted;
    double score = 0.0;
    for (const auto& sentence : summary) {
        for (auto& bigram : word_bigrams(sentence)) {
            auto it = doc_freq.find(bigram);
            if (it == doc_freq.end() || it->second < min_df) {
                continue;
            }
            if (counted.insert(std::move(bigram)).second) {
                score += it->second;  // each covered bigram counts once
            }
        }
    }
    return score;
}

double score_kl(const UnitDistribution& summary, const UnitDistribution& d, double gamma) {
    return -kl_divergence(summary, smooth(d, gamma));
}

double score_js(const UnitDistribution& summary, const UnitDistribution& d) {
    return -js_divergence(summary, d);
}

double score_kl_back(const UnitDistribution& summary, const UnitDistribution& k, double gamma,
                     bool positive_is_better) {
    const double kl = kl_divergence(summary, smooth(k, gamma));
    return positive_is_better ? kl : -kl;
}

double score_js_back(const UnitDistribution& summary, const UnitDistribution& k,
                     bool positive_is_better) {
    const double js = js_divergence(summary, k);
    return positive_is_better ? js : -js;
}

}  // namespace infosumm
