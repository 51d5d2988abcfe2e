#include "infosumm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace infosumm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

json config_json(const RunConfig& c) {
    return json{{"units", c.units},
                {"stopword_path", c.stopword_path},
                {"cue_lexicon_path", c.cue_lexicon_path},
                {"filter_stopword_units", c.filter_stopword_units},
                {"gamma", c.gamma},
                {"alpha", c.alpha},
                {"beta", c.beta},
                {"knowledge", c.knowledge},
                {"budget", c.budget},
                {"scorers", c.scorers},
                {"mode", c.mode},
                {"tau", c.tau},
                {"top", c.top},
                {"out", c.out},
                {"lexrank_damping", c.lexrank_damping},
                {"lexrank_threshold", c.lexrank_threshold},
                {"icsi_min_df", c.icsi_min_df}};
}

// The config embedded in data outputs: everything that affects the data.
// The output path is run metadata and would break byte-identity across
// otherwise equal runs, so it stays out (run_config.json still records it).
json embedded_config(const RunConfig& c) {
    RunConfig data_only = c;
    data_only.out.clear();
    return config_json(data_only);
}

// Either a file in the output directory or stdout.
class OutputSink {
public:
    OutputSink(const std::string& out_dir, const std::string& filename) {
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            path_ = fs::path(out_dir) / filename;
            file_.open(path_, std::ios::binary);
            if (!file_) {
                throw InputError("cannot write " + path_.string());
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    fs::path path_;
    std::ofstream file_;
};

void write_run_metadata(const RunConfig& config) {
    if (config.out.empty()) {
        return;
    }
    OutputSink sink(config.out, "run_config.json");
    sink.stream() << config_json(config).dump(2) << "\n";
}

struct LoadedTopic {
    Topic topic;
    TopicModel model;
};

std::vector<LoadedTopic> load_corpus(const fs::path& corpus_dir, const ResolvedConfig& resolved) {
    std::vector<LoadedTopic> out;
    for (const auto& dir : discover_topics(corpus_dir)) {
        Topic topic = load_topic(dir, resolved.tokenize);
        TopicModel model = build_topic_model(topic, resolved.options);
        out.push_back({std::move(topic), std::move(model)});
    }
    return out;
}

}  // namespace

std::string run_config_to_json(const RunConfig& config) {
    return config_json(config).dump(2);
}

RunConfig run_config_from_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read config file " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("malformed config file " + path.string() + ": " + e.what());
    }
    RunConfig c;
    c.units = j.value("units", c.units);
    c.stopword_path = j.value("stopword_path", c.stopword_path);
    c.cue_lexicon_path = j.value("cue_lexicon_path", c.cue_lexicon_path);
    c.filter_stopword_units = j.value("filter_stopword_units", c.filter_stopword_units);
    c.gamma = j.value("gamma", c.gamma);
    c.alpha = j.value("alpha", c.alpha);
    c.beta = j.value("beta", c.beta);
    c.knowledge = j.value("knowledge", c.knowledge);
    c.budget = j.value("budget", c.budget);
    c.scorers = j.value("scorers", c.scorers);
    c.mode = j.value("mode", c.mode);
    c.tau = j.value("tau", c.tau);
    c.top = j.value("top", c.top);
    c.out = j.value("out", c.out);
    c.lexrank_damping = j.value("lexrank_damping", c.lexrank_damping);
    c.lexrank_threshold = j.value("lexrank_threshold", c.lexrank_threshold);
    c.icsi_min_df = j.value("icsi_min_df", c.icsi_min_df);
    return c;
}

ResolvedConfig resolve_config(const RunConfig& config) {
    ResolvedConfig r;
    r.raw = config;

    if (config.units == "words") {
        r.tokenize.ngram = 1;
    } else if (config.units == "bigrams") {
        r.tokenize.ngram = 2;
    } else {
        throw InputError("units must be 'words' or 'bigrams', got '" + config.units + "'");
    }
    if (!config.stopword_path.empty()) {
        auto stopwords = load_stopwords(config.stopword_path);
        r.options.stopwords = stopwords;
        r.tokenize.stopwords = stopwords;
        r.tokenize.filter_stopwords = config.filter_stopword_units;
    } else if (config.filter_stopword_units) {
        throw InputError("filter_stopword_units requires a stopword list (--stopwords)");
    }
    if (!config.cue_lexicon_path.empty()) {
        r.options.cue_lexicon = std::make_shared<CueLexicon>(
            load_cue_lexicon(config.cue_lexicon_path));
    }
    if (!(config.gamma >= 0.0) || config.gamma >= 1.0) {
        throw InputError("gamma must lie in [0, 1)");
    }
    r.options.gamma = config.gamma;
    if (!(config.alpha >= 0.0) || !(config.beta >= 0.0)) {
        throw InputError("alpha and beta must be non-negative");
    }
    r.options.params = {config.alpha, config.beta};

    if (config.knowledge == "uniform") {
        r.options.knowledge = KnowledgeMode::Uniform;
    } else if (config.knowledge == "background") {
        r.options.knowledge = KnowledgeMode::Background;
    } else {
        if (!fs::is_regular_file(config.knowledge)) {
            throw InputError("knowledge must be 'uniform', 'background' or an existing text "
                             "file, got '" +
                             config.knowledge + "'");
        }
        r.options.knowledge = KnowledgeMode::File;
        r.options.knowledge_path = config.knowledge;
    }

    if (config.budget < 1) {
        throw InputError("budget must be at least 1 word");
    }
    if (config.top < 1) {
        throw InputError("top must be at least 1");
    }
    if (config.tau == "b") {
        r.options.tau_b = true;
    } else if (config.tau == "a") {
        r.options.tau_b = false;
    } else {
        throw InputError("tau must be 'a' or 'b', got '" + config.tau + "'");
    }
    if (!(config.lexrank_damping > 0.0) || config.lexrank_damping >= 1.0) {
        throw InputError("lexrank_damping must lie in (0, 1)");
    }
    if (!(config.lexrank_threshold >= 0.0)) {
        throw InputError("lexrank_threshold must be non-negative");
    }
    if (config.icsi_min_df < 1) {
        throw InputError("icsi_min_df must be at least 1");
    }
    r.options.lexrank_damping = config.lexrank_damping;
    r.options.lexrank_threshold = config.lexrank_threshold;
    r.options.icsi_min_df = config.icsi_min_df;

    r.scorers = config.scorers.empty() ? available_scorers() : config.scorers;
    for (const auto& scorer : r.scorers) {
        const auto& known = available_scorers();
        if (std::find(known.begin(), known.end(), scorer) == known.end()) {
            std::string valid;
            for (const auto& name : known) {
                valid += valid.empty() ? name : ", " + name;
            }
            throw InputError("unknown scorer '" + scorer + "' (valid: " + valid + ")");
        }
    }

    if (config.mode == "generic") {
        r.mode = EvalMode::Generic;
    } else if (config.mode == "update") {
        r.mode = EvalMode::Update;
    } else {
        throw InputError("mode must be 'generic' or 'update', got '" + config.mode + "'");
    }
    return r;
}

std::vector<fs::path> discover_topics(const fs::path& corpus_dir) {
    if (!fs::is_directory(corpus_dir)) {
        throw InputError("corpus directory not found: " + corpus_dir.string());
    }
    if (fs::is_directory(corpus_dir / "docs")) {
        return {corpus_dir};
    }
    std::vector<fs::path> topics;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.is_directory() && fs::is_directory(entry.path() / "docs")) {
            topics.push_back(entry.path());
        }
    }
    std::sort(topics.begin(), topics.end());
    if (topics.empty()) {
        throw InputError("no topic directories (with docs/) under " + corpus_dir.string());
    }
    return topics;
}

int cmd_score(const fs::path& corpus_dir, const RunConfig& config) {
    const ResolvedConfig resolved = resolve_config(config);
    const std::vector<LoadedTopic> corpus = load_corpus(corpus_dir, resolved);

    const std::string config_line = embedded_config(config).dump();
    OutputSink tsv(config.out, "scores.tsv");
    tsv.stream() << "# config: " << config_line << "\n";
    tsv.stream() << "topic\tsystem\tscorer\tscore\n";

    json all = json::object();
    for (const auto& [topic, model] : corpus) {
        const auto scored = score_all(topic, model, resolved.scorers, resolved.options);
        json topic_json = json::object();
        for (const auto& summary : scored) {
            json per_system = json::object();
            for (const auto& scorer : resolved.scorers) {
                const double value = summary.scores.at(scorer);
                tsv.stream() << topic.id << "\t" << summary.system_id << "\t" << scorer << "\t"
                             << fmt_double(value) << "\n";
                per_system[scorer] = value;
            }
            topic_json[summary.system_id] = std::move(per_system);
        }
        all[topic.id] = std::move(topic_json);
    }
    if (!config.out.empty()) {
        OutputSink js(config.out, "scores.json");
        js.stream() << json{{"config", embedded_config(config)}, {"scores", all}}.dump(2) << "\n";
    }
    write_run_metadata(config);
    return 0;
}

int cmd_target(const fs::path& corpus_dir, const RunConfig& config) {
    const ResolvedConfig resolved = resolve_config(config);
    const std::vector<LoadedTopic> corpus = load_corpus(corpus_dir, resolved);

    const std::string config_line = embedded_config(config).dump();
    OutputSink tsv(config.out, "target.tsv");
    tsv.stream() << "# config: " << config_line << "\n";
    tsv.stream() << "topic\tunit\ttarget_mass\treference_freq\n";

    std::ostringstream metrics;
    metrics << "topic\tsummarizability_bits\tpotential_information_bits\tlog2_c\tvocab_size\n";
    for (const auto& [topic, model] : corpus) {
        for (const auto& row : emit_target_comparison(topic, model, config.top)) {
            tsv.stream() << topic.id << "\t" << row.unit << "\t" << fmt_double(row.target_mass)
                         << "\t" << fmt_double(row.reference_freq) << "\n";
        }
        metrics << topic.id << "\t" << fmt_double(model.target.summarizability) << "\t"
                << fmt_double(model.potential_info) << "\t" << fmt_double(model.target.log_c)
                << "\t" << model.vocab->size() << "\n";
    }
    if (config.out.empty()) {
        // keep stdout single-stream: metrics ride along as comments
        std::istringstream lines(metrics.str());
        std::string line;
        while (std::getline(lines, line)) {
            std::cout << "# " << line << "\n";
        }
    } else {
        OutputSink m(config.out, "target_metrics.tsv");
        m.stream() << "# config: " << config_line << "\n" << metrics.str();
    }
    write_run_metadata(config);
    return 0;
}

int cmd_summarize(const fs::path& corpus_dir, const RunConfig& config) {
    const ResolvedConfig resolved = resolve_config(config);
    const std::vector<LoadedTopic> corpus = load_corpus(corpus_dir, resolved);

    if (config.out.empty()) {
        std::cout << "# config: " << embedded_config(config).dump() << "\n";
    }
    for (const auto& [topic, model] : corpus) {
        const ExtractResult result = extract(topic, model.target, Budget{config.budget});

        std::size_t words = 0;
        std::string text;
        for (const auto& sentence : result.sentences) {
            words += sentence.word_count();
            text += sentence.text;
            text += "\n";
        }
        json trace{{"config", embedded_config(config)},
                   {"topic", topic.id},
                   {"budget_words", config.budget},
                   {"word_count", words},
                   {"theta", result.trace.steps.empty() ? json()
                                                        : json(result.trace.steps.back().theta)},
                   {"steps", json::array()}};
        for (const auto& step : result.trace.steps) {
            trace["steps"].push_back(
                {{"sentence", step.sentence_id}, {"theta", step.theta}, {"margin", step.margin}});
        }

        if (config.out.empty()) {
            std::cout << "== topic " << topic.id << " (" << words << " words)\n" << text;
            for (const auto& step : result.trace.steps) {
                std::cout << "# step sentence=" << step.sentence_id
                          << " theta=" << fmt_double(step.theta)
                          << " margin=" << fmt_double(step.margin) << "\n";
            }
        } else {
            OutputSink summary(config.out, topic.id + ".summary.txt");
            summary.stream() << text;
            OutputSink trace_sink(config.out, topic.id + ".trace.json");
            trace_sink.stream() << trace.dump(2) << "\n";
        }
    }
    write_run_metadata(config);
    return 0;
}

int cmd_evaluate(const fs::path& corpus_dir, const RunConfig& config) {
    const ResolvedConfig resolved = resolve_config(config);

    std::vector<Topic> topics;
    for (const auto& dir : discover_topics(corpus_dir)) {
        topics.push_back(load_topic(dir, resolved.tokenize));
    }
    const EvaluationReport report = evaluate(topics, resolved.scorers, resolved.mode,
                                             resolved.options);

    json scorers_json = json::object();
    for (const auto& [name, eval] : report.per_scorer) {
        scorers_json[name] = {{"mean_tau", eval.mean_tau},
                              {"taus", eval.taus},
                              {"ttest",
                               {{"t", eval.ttest.t},
                                {"p", eval.ttest.p},
                                {"ref_mean", eval.ref_mean},
                                {"sys_mean", eval.sys_mean}}}};
    }
    json report_json{{"config", embedded_config(config)},
                     {"mode", report.mode},
                     {"topics", report.topic_ids},
                     {"scorers", scorers_json},
                     {"warnings", report.warnings}};

    std::ostringstream table;
    table << "mean Kendall tau vs human scores (" << report.mode << ", "
          << report.topic_ids.size() << " topics)\n";
    table << "scorer        " << report.mode << "\n";
    for (const auto& scorer : resolved.scorers) {
        const auto& eval = report.per_scorer.at(scorer);
        char value[32];
        if (std::isnan(eval.mean_tau)) {
            std::snprintf(value, sizeof(value), "%8s", "n/a");
        } else {
            std::snprintf(value, sizeof(value), "%8.3f", eval.mean_tau);
        }
        table << scorer;
        for (std::size_t i = scorer.size(); i < 14; ++i) {
            table << ' ';
        }
        table << value << "\n";
    }
    table << "\nreference-vs-system paired t-test\n";
    table << "scorer              t            p     ref_mean     sys_mean\n";
    for (const auto& scorer : resolved.scorers) {
        const auto& eval = report.per_scorer.at(scorer);
        char line[160];
        std::snprintf(line, sizeof(line), "%-14s %10.4f %12.3e %12.4f %12.4f\n", scorer.c_str(),
                      eval.ttest.t, eval.ttest.p, eval.ref_mean, eval.sys_mean);
        table << line;
    }
    for (const auto& warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }

    if (config.out.empty()) {
        std::cout << "# config: " << embedded_config(config).dump() << "\n" << table.str();
    } else {
        OutputSink txt(config.out, "report.txt");
        txt.stream() << table.str();
        OutputSink js(config.out, "report.json");
        js.stream() << report_json.dump(2) << "\n";
    }
    write_run_metadata(config);
    return 0;
}

}  // namespace infosumm
