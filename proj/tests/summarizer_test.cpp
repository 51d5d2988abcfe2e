#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>

#include "infosumm/summarizer.hpp"
#include "test_helpers.hpp"

using namespace infosumm;
using namespace infosumm::testing;

namespace {

// Target whose vocabulary comes from the topic itself; knowledge uniform,
// so the target equals the source distribution.
ImportanceTarget source_target(const Topic& topic, double gamma = 1e-6) {
    auto vocab = topic_vocabulary(topic);
    const auto d = distribution_of(unit_sequences(topic.source_docs), vocab);
    return build_target(d, knowledge_generic(d, gamma));
}

Topic random_topic(std::mt19937& rng, int max_sentences, const std::vector<std::string>& pool) {
    std::vector<std::vector<std::vector<std::string>>> docs(1 + rng() % 2);
    int remaining = 2 + static_cast<int>(rng() % (max_sentences - 1));
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const int here = d + 1 == docs.size()
                             ? remaining
                             : 1 + static_cast<int>(rng() % std::max(1, remaining - 1));
        for (int s = 0; s < here; ++s) {
            std::vector<std::string> words;
            const int len = 2 + rng() % 5;
            for (int i = 0; i < len; ++i) {
                words.push_back(pool[rng() % pool.size()]);
            }
            docs[d].push_back(words);
        }
        remaining -= here;
        if (remaining <= 0) {
            break;
        }
    }
    return make_topic(docs);
}

}  // namespace

TEST_CASE("extract: a lone fitting sentence is chosen") {
    const Topic topic = make_topic({{{"reef", "bleached", "again"}}});
    const auto result = extract(topic, source_target(topic), Budget{10});
    REQUIRE(result.sentences.size() == 1);
    CHECK(result.sentences[0].units == std::vector<std::string>{"reef", "bleached", "again"});
    CHECK(result.trace.steps.size() == 1);
}

TEST_CASE("extract: rejects empty sources and bad budgets") {
    Topic empty;
    empty.id = "empty";
    const Topic one = make_topic({{{"a"}}});
    const auto target = source_target(one);
    CHECK_THROWS_AS(extract(empty, target, Budget{10}), InputError);
    CHECK_THROWS_AS(extract(one, target, Budget{0}), std::invalid_argument);
}

TEST_CASE("extract: near-point-mass target picks the densest sentence first") {
    std::mt19937 rng(51);
    const std::vector<std::string> pool = {"u", "v", "w", "x", "y"};
    for (int trial = 0; trial < 40; ++trial) {
        const Topic topic = random_topic(rng, 8, pool);
        auto vocab = topic_vocabulary(topic);
        const auto target_unit = vocab->id_of("u");
        if (!target_unit) {
            continue;
        }
        std::vector<double> mass(vocab->size(), 0.0);
        mass[*target_unit] = 1.0;
        const auto point = smooth(UnitDistribution(vocab, std::move(mass)), 1e-9);
        const ImportanceTarget target{point, {}, 0.0, entropy(point)};

        const auto result = extract(topic, target, Budget{100});
        REQUIRE(!result.sentences.empty());

        // independent check: proportion of "u" among all source sentences
        const auto sources = all_source_sentences(topic);
        double best_prop = -1.0;
        for (const auto& sentence : sources) {
            double hits = 0;
            for (const auto& unit : sentence.units) {
                hits += unit == "u";
            }
            best_prop = std::max(best_prop, hits / sentence.units.size());
        }
        double chosen_hits = 0;
        for (const auto& unit : result.sentences[0].units) {
            chosen_hits += unit == "u";
        }
        CHECK(chosen_hits / result.sentences[0].units.size() ==
              doctest::Approx(best_prop).epsilon(1e-12));
    }
}

TEST_CASE("extract: greedy equals exhaustive search on a fixed 5-sentence topic") {
    const Topic topic = make_topic({{
        {"tram", "line", "opened"},
        {"tram", "depot", "flooded", "badly"},
        {"line", "opened", "early"},
        {"depot", "crews", "cheered"},
        {"crews", "cleared", "tracks", "fast"},
    }});
    const auto target = source_target(topic);
    const Budget budget{10};
    const auto result = extract(topic, target, budget);

    // exhaustive oracle over all sentence subsets within budget
    const auto sources = all_source_sentences(topic);
    const auto& vocab = *target.dist.vocab();
    double best = -std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << sources.size()); ++mask) {
        std::size_t words = 0;
        std::unordered_map<std::uint32_t, double> counts;
        double total = 0.0;
        for (std::size_t i = 0; i < sources.size(); ++i) {
            if (!(mask & (1u << i))) {
                continue;
            }
            words += sources[i].word_count();
            for (const auto& unit : sources[i].units) {
                counts[*vocab.id_of(unit)] += 1.0;
                total += 1.0;
            }
        }
        if (words > static_cast<std::size_t>(budget.max_words)) {
            continue;
        }
        double kl = 0.0;
        for (const auto& [id, c] : counts) {
            kl += (c / total) * std::log2((c / total) / target.dist[id]);
        }
        best = std::max(best, -kl);
    }
    REQUIRE(!result.trace.steps.empty());
    CHECK(result.trace.steps.back().theta == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("extract: never exceeds the budget, never repeats a sentence") {
    std::mt19937 rng(52);
    const std::vector<std::string> pool = {"gale", "pier", "shut", "ferry", "ran",
                                           "late", "storm", "tide", "high"};
    for (int trial = 0; trial < 50; ++trial) {
        const Topic topic = random_topic(rng, 10, pool);
        const Budget budget{3 + static_cast<int>(rng() % 20)};
        const auto result = extract(topic, source_target(topic), budget);
        std::size_t words = 0;
        std::set<std::pair<int, int>> seen;
        for (const auto& sentence : result.sentences) {
            words += sentence.word_count();
            CHECK(seen.insert({sentence.doc_id, sentence.position}).second);
        }
        CHECK(words <= static_cast<std::size_t>(budget.max_words));
    }
}

TEST_CASE("extract: theta strictly increases along the trace") {
    std::mt19937 rng(53);
    const std::vector<std::string> pool = {"vote", "count", "ended", "late", "results",
                                           "came", "in", "waves"};
    for (int trial = 0; trial < 30; ++trial) {
        const Topic topic = random_topic(rng, 9, pool);
        const auto result = extract(topic, source_target(topic), Budget{25});
        for (std::size_t i = 1; i < result.trace.steps.size(); ++i) {
            CHECK(result.trace.steps[i].theta > result.trace.steps[i - 1].theta);
        }
        for (const auto& step : result.trace.steps) {
            CHECK(step.margin >= 0.0);
        }
    }
}

TEST_CASE("extract: identical topic and config give identical output") {
    std::mt19937 rng(54);
    const std::vector<std::string> pool = {"dam", "gates", "held", "water", "rose", "fell"};
    const Topic topic = random_topic(rng, 10, pool);
    const auto target = source_target(topic);
    const auto a = extract(topic, target, Budget{15});
    const auto b = extract(topic, target, Budget{15});
    REQUIRE(a.sentences.size() == b.sentences.size());
    for (std::size_t i = 0; i < a.sentences.size(); ++i) {
        CHECK(a.sentences[i].text == b.sentences[i].text);
        CHECK(a.trace.steps[i].sentence_id == b.trace.steps[i].sentence_id);
        CHECK(a.trace.steps[i].theta == b.trace.steps[i].theta);
    }
}

TEST_CASE("extract: ties break toward the earlier document and position") {
    // two identical sentences in different documents; the doc-0 one must win
    const Topic topic = make_topic({
        {{"quake", "hit", "port"}},
        {{"quake", "hit", "port"}},
    });
    const auto result = extract(topic, source_target(topic), Budget{3});
    REQUIRE(result.sentences.size() == 1);
    CHECK(result.sentences[0].doc_id == 0);
}

TEST_CASE("score_all applies every scorer to every candidate") {
    Topic topic = make_topic({{{"harbor", "froze", "solid"}, {"ships", "waited", "weeks"}}});
    Candidate good;
    good.system_id = "sys_a";
    good.sentences = make_summary({{"harbor", "froze", "solid"}});
    Candidate other;
    other.system_id = "sys_b";
    other.sentences = make_summary({{"ships", "waited"}});
    topic.candidates = {good, other};

    ScoreOptions opts;
    const TopicModel model = build_topic_model(topic, opts);
    const auto scored = score_all(topic, model, available_scorers(), opts);
    REQUIRE(scored.size() == 2);
    for (const auto& summary : scored) {
        CHECK(summary.scores.size() == available_scorers().size());
        for (const auto& [name, value] : summary.scores) {
            CAPTURE(name);
            CHECK(std::isfinite(value));
        }
    }
    CHECK(scored[0].system_id == "sys_a");

    // determinism, bit for bit
    const auto again = score_all(topic, model, available_scorers(), opts);
    for (std::size_t i = 0; i < scored.size(); ++i) {
        CHECK(scored[i].scores == again[i].scores);
    }

    CHECK_THROWS_AS(score_all(topic, model, {"no_such"}, opts), std::invalid_argument);
}

TEST_CASE("topic model: uniform knowledge makes the target track the source") {
    const Topic topic = make_topic({{{"comet", "tail", "split"}, {"comet", "seen", "twice"}}});
    ScoreOptions opts;
    const TopicModel model = build_topic_model(topic, opts);
    CHECK(model.knowledge.strictly_positive());
    CHECK(model.target.dist.strictly_positive());
    for (std::size_t i = 0; i < model.source.size(); ++i) {
        CHECK(model.target.dist[i] == doctest::Approx(model.source[i]).epsilon(1e-4));
    }
    CHECK(model.potential_info ==
          doctest::Approx(potential_information(model.source, model.knowledge)));
}

TEST_CASE("topic model: background knowledge requires background docs") {
    const Topic topic = make_topic({{{"one", "sentence"}}});
    ScoreOptions opts;
    opts.knowledge = KnowledgeMode::Background;
    CHECK_THROWS_AS(build_topic_model(topic, opts), InputError);
}
