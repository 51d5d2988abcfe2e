#include "infosumm/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace infosumm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using UnitCounts = std::unordered_map<std::uint32_t, double>;

// θ_I of the summary whose unit counts are given; -inf on support violation.
double theta_of_counts(const UnitCounts& counts, double total, const UnitDistribution& target) {
    double kl = 0.0;
    for (const auto& [id, count] : counts) {
        const double s = count / total;
        const double t = target[id];
        if (t <= 0.0) {
            return -kInf;
        }
        kl += s * std::log2(s / t);
    }
    return -kl;
}

std::vector<std::uint32_t> sentence_unit_ids(const Sentence& sentence, const Vocabulary& vocab) {
    std::vector<std::uint32_t> ids;
    ids.reserve(sentence.units.size());
    for (const auto& unit : sentence.units) {
        auto id = vocab.id_of(unit);
        if (!id) {
            throw std::invalid_argument("target vocabulary does not cover the topic: " + unit);
        }
        ids.push_back(*id);
    }
    return ids;
}

}  // namespace

ExtractResult extract(const Topic& topic, const ImportanceTarget& target, Budget budget) {
    if (budget.max_words < 1) {
        throw std::invalid_argument("budget must be at least one word");
    }
    if (!target.dist.vocab()) {
        throw std::invalid_argument("target lacks a vocabulary");
    }
    const std::vector<Sentence> sources = all_source_sentences(topic);
    if (sources.empty()) {
        throw InputError("topic " + topic.id + ": no source sentences to extract from");
    }

    std::vector<std::vector<std::uint32_t>> ids(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        ids[i] = sentence_unit_ids(sources[i], *target.dist.vocab());
    }

    std::vector<bool> used(sources.size(), false);
    UnitCounts counts;
    double total_units = 0.0;
    int words_used = 0;
    double current_theta = -kInf;
    ExtractResult result;

    for (;;) {
        int best = -1;
        double best_theta = -kInf;
        double runner_up = -kInf;
        for (std::size_t i = 0; i < sources.size(); ++i) {
            if (used[i] ||
                words_used + static_cast<int>(sources[i].word_count()) > budget.max_words) {
                continue;
            }
            for (std::uint32_t id : ids[i]) {
                counts[id] += 1.0;
            }
            const double theta = theta_of_counts(
                counts, total_units + static_cast<double>(ids[i].size()), target.dist);
            for (std::uint32_t id : ids[i]) {
                auto it = counts.find(id);
                if ((it->second -= 1.0) == 0.0) {
                    counts.erase(it);
                }
            }
            if (theta > best_theta) {
                runner_up = best_theta;
                best_theta = theta;
                best = static_cast<int>(i);
            } else if (theta > runner_up) {
                runner_up = theta;
            }
        }
        if (best < 0 || best_theta <= current_theta) {
            break;  // nothing fits, or nothing improves
        }
        used[best] = true;
        for (std::uint32_t id : ids[best]) {
            counts[id] += 1.0;
        }
        total_units += static_cast<double>(ids[best].size());
        words_used += static_cast<int>(sources[best].word_count());
        current_theta = best_theta;
        result.sentences.push_back(sources[best]);
        result.trace.steps.push_back(
            {best, best_theta, std::isinf(runner_up) ? 0.0 : best_theta - runner_up});
    }
    return result;
}

TopicModel build_topic_model(const Topic& topic, const ScoreOptions& opts) {
    auto vocab = topic_vocabulary(topic);
    UnitDistribution source = distribution_of(unit_sequences(topic.source_docs), vocab);

    UnitDistribution knowledge = [&]() -> UnitDistribution {
        switch (opts.knowledge) {
            case KnowledgeMode::Background:
                return knowledge_update(topic, vocab, opts.gamma);
            case KnowledgeMode::File: {
                std::ifstream in(opts.knowledge_path, std::ios::binary);
                if (!in) {
                    throw InputError("cannot read knowledge file " + opts.knowledge_path.string());
                }
                std::ostringstream buf;
                buf << in.rdbuf();
                std::vector<std::string> known;
                for (auto& unit : tokenize(buf.str(), topic.config)) {
                    if (vocab->id_of(unit)) {
                        known.push_back(std::move(unit));  // off-vocabulary units are ignored
                    }
                }
                if (known.empty()) {
                    throw InputError("knowledge file " + opts.knowledge_path.string() +
                                     " shares no units with topic " + topic.id);
                }
                return smooth(distribution_of({known}, vocab), opts.gamma);
            }
            case KnowledgeMode::Uniform:
                break;
        }
        return knowledge_generic(source, opts.gamma);
    }();

    // Build the target from the raw source distribution, then smooth the
    // target itself: the target is the second argument of θ_I's divergence,
    // and pre-smoothing d would leak mass to units the sources never use.
    ImportanceTarget raw = build_target(source, knowledge, opts.params);
    UnitDistribution scoring_dist = smooth(raw.dist, opts.gamma);
    ImportanceTarget target{scoring_dist, opts.params, raw.log_c, entropy(scoring_dist)};

    TopicModel model{std::move(vocab),
                     source,
                     smooth(source, opts.gamma),
                     std::move(knowledge),
                     std::move(target),
                     0.0};
    model.potential_info = potential_information(model.source, model.knowledge);
    return model;
}

const std::vector<std::string>& available_scorers() {
    static const std::vector<std::string> names = {"icsi",    "edmundson", "lexrank", "kl",
                                                   "js",      "kl_back",   "js_back", "red",
                                                   "rel",     "inf",       "theta_i"};
    return names;
}

double score_summary(const std::string& scorer, const std::vector<Sentence>& sentences,
                     const Topic& topic, const TopicModel& model, const ScoreOptions& opts) {
    static const StopwordSet no_stopwords;
    if (scorer == "icsi") {
        return score_icsi(sentences, topic, opts.icsi_min_df);
    }
    if (scorer == "edmundson") {
        return score_edmundson(sentences, topic, opts.edmundson, opts.cue_lexicon.get(),
                               opts.stopwords ? *opts.stopwords : no_stopwords);
    }
    if (scorer == "lexrank") {
        return score_lexrank(sentences, topic, opts.lexrank_damping, opts.lexrank_threshold);
    }

    const UnitDistribution s = distribution_of(unit_sequences(sentences), model.vocab);
    if (scorer == "theta_i") {
        return theta_i(s, model.target);
    }
    if (scorer == "red") {
        return -redundancy(s);  // negated so that, like every scorer here, higher is better
    }
    if (scorer == "rel") {
        return relevance(s, model.source_smoothed);
    }
    if (scorer == "inf") {
        return informativeness(s, model.knowledge);
    }
    if (scorer == "kl") {
        return score_kl(s, model.source, opts.gamma);
    }
    if (scorer == "js") {
        return score_js(s, model.source);
    }
    if (scorer == "kl_back") {
        const double kl = kl_divergence(s, model.knowledge);
        return opts.back_positive ? kl : -kl;
    }
    if (scorer == "js_back") {
        const double js = js_divergence(s, model.knowledge);
        return opts.back_positive ? js : -js;
    }
    throw std::invalid_argument("unknown scorer: " + scorer);
}

std::vector<ScoredSummary> score_all(const Topic& topic, const TopicModel& model,
                                     const std::vector<std::string>& scorers,
                                     const ScoreOptions& opts) {
    std::vector<ScoredSummary> out;
    out.reserve(topic.candidates.size());
    for (const auto& candidate : topic.candidates) {
        ScoredSummary scored;
        scored.system_id = candidate.system_id;
        for (const auto& scorer : scorers) {
            scored.scores[scorer] = score_summary(scorer, candidate.sentences, topic, model, opts);
        }
        out.push_back(std::move(scored));
    }
    return out;
}

}  // namespace infosumm
