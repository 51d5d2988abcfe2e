#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "infosumm/corpus.hpp"

using namespace infosumm;
namespace fs = std::filesystem;

namespace {

TokenizeConfig words_config() { return {}; }

std::shared_ptr<const StopwordSet> make_stopwords(std::initializer_list<const char*> words) {
    auto set = std::make_shared<StopwordSet>();
    for (const char* w : words) {
        set->insert(w);
    }
    return set;
}

// scratch topic directory for load_topic tests
struct TempTopic {
    fs::path dir;

    explicit TempTopic(const std::string& name) {
        dir = fs::temp_directory_path() / ("infosumm_test_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempTopic() { fs::remove_all(dir); }

    void write(const std::string& relative, const std::string& content) const {
        const fs::path path = dir / relative;
        fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
};

}  // namespace

TEST_CASE("tokenize lowercases, strips punctuation, filters stopwords") {
    TokenizeConfig cfg;
    cfg.filter_stopwords = true;
    cfg.stopwords = make_stopwords({"the"});
    CHECK(tokenize("The cat sat.", cfg) == std::vector<std::string>{"cat", "sat"});
}

TEST_CASE("tokenize builds bigrams with a sliding window") {
    TokenizeConfig cfg;
    cfg.ngram = 2;
    CHECK(tokenize("a b a", cfg) == std::vector<std::string>{"a_b", "b_a"});
}

TEST_CASE("tokenize of empty text is empty") {
    CHECK(tokenize("", words_config()).empty());
    CHECK(tokenize("  ...  ", words_config()).empty());
}

TEST_CASE("tokenize rejects unsupported ngram orders") {
    TokenizeConfig cfg;
    cfg.ngram = 3;
    CHECK_THROWS_AS(tokenize("a b c", cfg), std::invalid_argument);
}

TEST_CASE("tokenize is idempotent at the unit level") {
    std::mt19937 rng(7);
    const std::vector<std::string> pool = {"Winds", "rose", "FAST", "again,", "дом", "q7"};
    TokenizeConfig cfg;
    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        const int len = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < len; ++i) {
            text += pool[rng() % pool.size()];
            text += ' ';
        }
        const auto first = tokenize(text, cfg);
        std::string joined;
        for (const auto& unit : first) {
            joined += unit;
            joined += ' ';
        }
        CHECK(tokenize(joined, cfg) == first);
    }
}

TEST_CASE("distribution_of counts units") {
    auto vocab = Vocabulary::build({{"a", "b"}});
    const auto p = distribution_of({{"a", "b", "a"}}, vocab);
    CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const auto q = distribution_of({{"a"}, {"b"}}, vocab);
    CHECK(q[0] == doctest::Approx(0.5));
    CHECK(q[1] == doctest::Approx(0.5));

    const auto r = distribution_of({{"a", "a", "a", "a"}}, vocab);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 0.0);
    CHECK_FALSE(r.strictly_positive());
}

TEST_CASE("distribution_of rejects all-empty input and foreign units") {
    auto vocab = Vocabulary::build({{"a"}});
    CHECK_THROWS_WITH_AS(distribution_of({{}, {}}, vocab), "empty distribution",
                         std::invalid_argument);
    CHECK_THROWS_AS(distribution_of({{"zz"}}, vocab), std::invalid_argument);
}

TEST_CASE("distribution_of is invariant under token order") {
    std::mt19937 rng(11);
    auto vocab = Vocabulary::build({{"a", "b", "c", "d"}});
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> units;
        const int len = 1 + static_cast<int>(rng() % 20);
        for (int i = 0; i < len; ++i) {
            units.push_back(std::string(1, static_cast<char>('a' + rng() % 4)));
        }
        auto shuffled = units;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(distribution_of({units}, vocab).mass() ==
              distribution_of({shuffled}, vocab).mass());
    }
}

TEST_CASE("smooth interpolates toward uniform") {
    const auto p = UnitDistribution::from_mass({1.0, 0.0});
    const auto s = smooth(p, 0.5);
    CHECK(s[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(s[1] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s.strictly_positive());

    CHECK(smooth(p, 0.0).mass() == p.mass());  // identity, bit for bit

    const auto uniform = UnitDistribution::from_mass({0.5, 0.5});
    const auto su = smooth(uniform, 0.37);
    CHECK(su[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(su[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("smooth validates gamma and re-smoothing with 0 changes nothing") {
    const auto p = UnitDistribution::from_mass({0.25, 0.75});
    CHECK_THROWS_AS(smooth(p, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(smooth(p, 1.0), std::invalid_argument);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = 0.05 + 0.9 * (rng() % 1000) / 1000.0;
        const auto q = UnitDistribution::from_mass({a, 1.0 - a});
        const double g = (rng() % 999) / 1000.0;
        const auto smoothed = smooth(q, g);
        CHECK(smooth(smoothed, 0.0).mass() == smoothed.mass());
    }
}

TEST_CASE("uniform_over_support") {
    const auto p = UnitDistribution::from_mass({0.9, 0.1, 0.0});
    const auto u = uniform_over_support(p);
    CHECK(u.mass() == std::vector<double>{0.5, 0.5, 0.0});

    const auto point = UnitDistribution::from_mass({1.0, 0.0});
    CHECK(uniform_over_support(point).mass() == std::vector<double>{1.0, 0.0});

    const auto already = UnitDistribution::from_mass({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(uniform_over_support(already)[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));
}

TEST_CASE("UnitDistribution validates mass") {
    CHECK_THROWS_AS(UnitDistribution::from_mass({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(UnitDistribution::from_mass({1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(UnitDistribution::from_mass({}), std::invalid_argument);
}

TEST_CASE("vocabulary keeps first-occurrence order and is rebuild-stable") {
    auto vocab = Vocabulary::build({{"b", "a"}, {"a", "c"}});
    REQUIRE(vocab->size() == 3);
    CHECK(vocab->unit(0) == "b");
    CHECK(vocab->unit(1) == "a");
    CHECK(vocab->unit(2) == "c");
    CHECK(*vocab->id_of("c") == 2);
    CHECK_FALSE(vocab->id_of("zz").has_value());

    auto again = Vocabulary::build({{"b", "a"}, {"a", "c"}});
    for (std::uint32_t i = 0; i < vocab->size(); ++i) {
        CHECK(vocab->unit(i) == again->unit(i));
    }
}

TEST_CASE("split_sentences cuts on terminal punctuation and drops empties") {
    const auto sentences =
        split_sentences("Rain fell. Rivers rose!! Did dams hold? ... Yes.", words_config(), 4);
    REQUIRE(sentences.size() == 4);
    CHECK(sentences[0].text == "Rain fell.");
    CHECK(sentences[1].text == "Rivers rose!!");
    CHECK(sentences[2].text == "Did dams hold?");
    CHECK(sentences[3].text == "Yes.");  // the bare "..." chunk was dropped
    CHECK(sentences[2].doc_id == 4);
    CHECK(sentences[2].position == 2);
    CHECK(sentences[0].words == std::vector<std::string>{"rain", "fell"});
}

TEST_CASE("split_sentences does not cut on interior periods") {
    const auto sentences = split_sentences("Flow peaked at 3.5 m. Levees held.", words_config(), 0);
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].words == std::vector<std::string>{"flow", "peaked", "at", "3", "5", "m"});
}

TEST_CASE("load_topic reads the documented layout") {
    TempTopic tmp("layout");
    tmp.write("docs/d1.txt", "Alpine snow melted early. Rivers ran high.");
    tmp.write("docs/d2.txt", "Dams released water. Fields flooded anyway.");
    tmp.write("background/b1.txt", "Snow fell all winter.");
    tmp.write("refs/r1.txt", "Early melt flooded fields.");
    tmp.write("systems/sysA.txt", "Rivers ran high.");
    tmp.write("systems/sysB.txt", "Dams released water.");
    tmp.write("scores.tsv", "sysA\t0.8\nsysB\t0.4\n");

    const Topic topic = load_topic(tmp.dir);
    CHECK(topic.id == tmp.dir.filename().string());
    REQUIRE(topic.source_docs.size() == 2);
    CHECK(topic.source_docs[0].name == "d1");
    CHECK(topic.source_docs[0].sentences.size() == 2);
    CHECK(topic.source_docs[1].sentences[0].doc_id == 1);
    CHECK(topic.has_background());
    REQUIRE(topic.candidates.size() == 2);
    CHECK(topic.candidates[0].system_id == "sysA");
    CHECK(topic.candidates[0].human_score == 0.8);
    CHECK(topic.candidates[1].human_score == 0.4);
    REQUIRE(topic.references.size() == 1);

    const auto vocab = topic_vocabulary(topic);
    CHECK(vocab->unit(0) == "alpine");  // first unit of the first source doc
    CHECK(vocab->id_of("flooded").has_value());
    CHECK(vocab->id_of("winter").has_value());  // background-only unit
    CHECK(vocab->id_of("melt").has_value());    // reference-only unit
}

TEST_CASE("load_topic requires source docs") {
    TempTopic tmp("nodocs");
    tmp.write("refs/r1.txt", "Nothing to see.");
    CHECK_THROWS_AS(load_topic(tmp.dir), InputError);
}

TEST_CASE("load_topic names the line of a malformed scores file") {
    TempTopic tmp("badscores");
    tmp.write("docs/d1.txt", "One sentence here.");
    tmp.write("systems/s1.txt", "One sentence here.");
    tmp.write("scores.tsv", "s1\t0.5\ns1 no tab at all\n");
    CHECK_THROWS_WITH_AS(load_topic(tmp.dir),
                         doctest::Contains("line 2"), InputError);

    tmp.write("scores.tsv", "s1\tnot_a_number\n");
    CHECK_THROWS_WITH_AS(load_topic(tmp.dir),
                         doctest::Contains("line 1"), InputError);
}
