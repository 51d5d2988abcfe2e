#include "infosumm/evalharness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace infosumm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            break;
        }
    }
    return h;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double students_t_two_sided_p(double t, double df) {
    if (std::isinf(t)) {
        return 0.0;
    }
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double kendall_tau(const std::vector<double>& a, const std::vector<double>& b,
                   bool tie_corrected) {
    const std::size_t n = a.size();
    if (n != b.size() || n < 2) {
        throw std::invalid_argument("kendall_tau needs two equally long lists of size >= 2");
    }
    long long concordant = 0;
    long long discordant = 0;
    long long ties_a = 0;
    long long ties_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double da = a[i] - a[j];
            const double db = b[i] - b[j];
            ties_a += da == 0.0;
            ties_b += db == 0.0;
            if (da * db > 0.0) {
                ++concordant;
            } else if (da * db < 0.0) {
                ++discordant;
            }
        }
    }
    const auto n0 = static_cast<long long>(n) * static_cast<long long>(n - 1) / 2;
    if (ties_a == n0 || ties_b == n0) {
        throw std::invalid_argument("degenerate ranking");
    }
    const double numer = static_cast<double>(concordant - discordant);
    if (!tie_corrected) {
        return numer / static_cast<double>(n0);
    }
    return numer / std::sqrt(static_cast<double>(n0 - ties_a) * static_cast<double>(n0 - ties_b));
}

TTestResult paired_ttest(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) {
        throw std::invalid_argument("paired_ttest needs two equally long lists of size >= 2");
    }
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
        diff[i] = x[i] - y[i];
    }
    const double mean = mean_of(diff);
    double ss = 0.0;
    for (double d : diff) {
        ss += (d - mean) * (d - mean);
    }
    const double var = ss / static_cast<double>(n - 1);

    TTestResult result;
    if (var == 0.0) {
        result.degenerate = true;
        if (mean == 0.0) {
            result.t = kNaN;  // x == y: no direction at all
            result.p = kNaN;
        } else {
            result.t = mean > 0.0 ? kInf : -kInf;
            result.p = 0.0;
        }
        return result;
    }
    result.t = mean / std::sqrt(var / static_cast<double>(n));
    result.p = students_t_two_sided_p(result.t, static_cast<double>(n - 1));
    return result;
}

EvaluationReport evaluate(const std::vector<Topic>& topics,
                          const std::vector<std::string>& scorers, EvalMode mode,
                          const ScoreOptions& opts) {
    EvaluationReport report;
    report.mode = mode == EvalMode::Update ? "update" : "generic";

    ScoreOptions eval_opts = opts;
    eval_opts.knowledge =
        mode == EvalMode::Update ? KnowledgeMode::Background : KnowledgeMode::Uniform;

    // Process in sorted topic order so the report is invariant to input order.
    std::vector<const Topic*> ordered;
    ordered.reserve(topics.size());
    for (const auto& topic : topics) {
        ordered.push_back(&topic);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const Topic* a, const Topic* b) { return a->id < b->id; });

    if (mode == EvalMode::Update) {
        for (const Topic* topic : ordered) {
            if (!topic->has_background()) {
                throw InputError("topic " + topic->id +
                                 ": update mode requires background documents");
            }
        }
    }

    struct TopicScores {
        std::string id;
        std::map<std::string, std::optional<double>> tau;  // scorer -> tau for this topic
        std::map<std::string, double> ref_mean;
        std::map<std::string, double> sys_mean;
        bool has_tau = false;
        bool has_ttest_pair = false;
    };
    std::vector<TopicScores> per_topic;

    for (const Topic* topic : ordered) {
        const TopicModel model = build_topic_model(*topic, eval_opts);
        const std::vector<ScoredSummary> scored = score_all(*topic, model, scorers, eval_opts);

        TopicScores ts;
        ts.id = topic->id;

        std::vector<const ScoredSummary*> with_human;
        std::vector<double> human;
        for (std::size_t i = 0; i < scored.size(); ++i) {
            if (topic->candidates[i].human_score) {
                with_human.push_back(&scored[i]);
                human.push_back(*topic->candidates[i].human_score);
            }
        }
        if (with_human.size() < 2) {
            report.warnings.push_back("topic " + topic->id +
                                      ": fewer than 2 human-scored candidates, tau skipped");
        } else {
            ts.has_tau = true;
            for (const auto& scorer : scorers) {
                std::vector<double> values;
                values.reserve(with_human.size());
                for (const ScoredSummary* s : with_human) {
                    values.push_back(s->scores.at(scorer));
                }
                try {
                    ts.tau[scorer] = kendall_tau(values, human, eval_opts.tau_b);
                } catch (const std::invalid_argument&) {
                    ts.tau[scorer] = std::nullopt;
                    report.warnings.push_back("topic " + topic->id + ": scorer " + scorer +
                                              " gave a degenerate ranking, tau skipped");
                }
            }
        }

        if (topic->references.empty()) {
            report.warnings.push_back("topic " + topic->id +
                                      ": no reference summaries, t-test pair skipped");
        } else if (!scored.empty()) {
            ts.has_ttest_pair = true;
            for (const auto& scorer : scorers) {
                double ref_sum = 0.0;
                for (const auto& ref : topic->references) {
                    ref_sum += score_summary(scorer, ref.sentences, *topic, model, eval_opts);
                }
                double sys_sum = 0.0;
                for (const auto& s : scored) {
                    sys_sum += s.scores.at(scorer);
                }
                ts.ref_mean[scorer] = ref_sum / static_cast<double>(topic->references.size());
                ts.sys_mean[scorer] = sys_sum / static_cast<double>(scored.size());
            }
        }
        per_topic.push_back(std::move(ts));
    }

    for (const auto& ts : per_topic) {
        if (ts.has_tau) {
            report.topic_ids.push_back(ts.id);
        }
    }

    for (const auto& scorer : scorers) {
        ScorerEvaluation eval;
        double tau_sum = 0.0;
        int tau_count = 0;
        for (const auto& ts : per_topic) {
            if (!ts.has_tau) {
                continue;
            }
            const auto& tau = ts.tau.at(scorer);
            eval.taus.push_back(tau.value_or(kNaN));
            if (tau) {
                tau_sum += *tau;
                ++tau_count;
            }
        }
        eval.mean_tau = tau_count > 0 ? tau_sum / tau_count : kNaN;

        std::vector<double> ref_means;
        std::vector<double> sys_means;
        for (const auto& ts : per_topic) {
            if (ts.has_ttest_pair) {
                ref_means.push_back(ts.ref_mean.at(scorer));
                sys_means.push_back(ts.sys_mean.at(scorer));
            }
        }
        if (ref_means.size() >= 2) {
            eval.ttest = paired_ttest(ref_means, sys_means);
            eval.ref_mean = mean_of(ref_means);
            eval.sys_mean = mean_of(sys_means);
        } else {
            eval.ttest.degenerate = true;
            eval.ttest.t = kNaN;
            eval.ttest.p = kNaN;
            eval.ref_mean = kNaN;
            eval.sys_mean = kNaN;
            report.warnings.push_back("scorer " + scorer +
                                      ": fewer than 2 topics with references, t-test skipped");
        }
        report.per_scorer[scorer] = std::move(eval);
    }
    return report;
}

std::vector<TargetRow> emit_target_comparison(const Topic& topic, const TopicModel& model,
                                              int top_n) {
    if (top_n < 1) {
        throw std::invalid_argument("top_n must be at least 1");
    }
    std::optional<UnitDistribution> ref_dist;
    if (!topic.references.empty()) {
        std::vector<std::vector<std::string>> seqs;
        for (const auto& ref : topic.references) {
            for (const auto& sentence : ref.sentences) {
                seqs.push_back(sentence.units);
            }
        }
        ref_dist = distribution_of(seqs, model.vocab);
    }

    std::vector<std::uint32_t> order(model.vocab->size());
    std::iota(order.begin(), order.end(), 0);
    const auto& target = model.target.dist;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (target[a] != target[b]) {
            return target[a] > target[b];
        }
        return a < b;
    });

    std::vector<TargetRow> rows;
    const std::size_t limit = std::min<std::size_t>(top_n, order.size());
    rows.reserve(limit);
    for (std::size_t i = 0; i < limit; ++i) {
        const std::uint32_t id = order[i];
        rows.push_back({model.vocab->unit(id), target[id], ref_dist ? (*ref_dist)[id] : 0.0});
    }
    return rows;
}

}  // namespace infosumm
