#pragma once

#include "infosumm/summarizer.hpp"

namespace infosumm {

// Kendall rank correlation. The default is the tie-corrected tau-b,
//   (C - D) / sqrt((n0 - T_a)(n0 - T_b));
// tie_corrected = false gives tau-a, (C - D) / n0. Throws
// "degenerate ranking" when either list is entirely tied.
double kendall_tau(const std::vector<double>& a, const std::vector<double>& b,
                   bool tie_corrected = true);

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    bool degenerate = false;  // zero variance in the paired differences
};

// Paired-differences t statistic with n-1 degrees of freedom; two-sided p
// from the t CDF (regularized incomplete beta, |error| < 1e-8). Equal lists
// give a degenerate NaN result; zero variance with nonzero mean gives a
// degenerate infinite t with p = 0.
TTestResult paired_ttest(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided p for a t statistic; exposed for reuse and direct testing.
double students_t_two_sided_p(double t, double df);

struct ScorerEvaluation {
    double mean_tau = 0.0;
    std::vector<double> taus;  // aligned with EvaluationReport::topic_ids; NaN = no tau
    TTestResult ttest;         // reference vs system means, paired by topic
    double ref_mean = 0.0;
    double sys_mean = 0.0;
};

struct EvaluationReport {
    std::string mode;
    std::vector<std::string> topic_ids;  // topics that contributed a tau, sorted
    std::map<std::string, ScorerEvaluation> per_scorer;
    std::vector<std::string> warnings;
};

enum class EvalMode { Generic, Update };

// The correlation protocol: per topic, Kendall's tau between each scorer's
// candidate scores and the human scores; means across topics; and a paired
// t-test of reference-vs-system scorer means. Update mode requires
// background documents on every topic and uses them as knowledge.
EvaluationReport evaluate(const std::vector<Topic>& topics,
                          const std::vector<std::string>& scorers, EvalMode mode,
                          const ScoreOptions& opts);

struct TargetRow {
    std::string unit;
    double target_mass = 0.0;
    double reference_freq = 0.0;
};

// Top-N units by target mass next to their frequency in the reference
// summaries; plot-ready.
std::vector<TargetRow> emit_target_comparison(const Topic& topic, const TopicModel& model,
                                              int top_n = 50);

}  // namespace infosumm
