#pragma once

#include "infosumm/infoquant.hpp"

namespace infosumm {

// Linear feature weights (cue, key, title, location).
struct EdmundsonWeights {
    double cue = 1.0;
    double key = 1.0;
    double title = 1.0;
    double location = 1.0;
};

// word -> signed weight; bonus words positive, stigma words negative.
using CueLexicon = std::unordered_map<std::string, double>;

// Lines of `word<TAB>weight`.
CueLexicon load_cue_lexicon(const std::filesystem::path& path);

// Sum over summary sentences of the four weighted features. A null cue
// lexicon makes the cue term 0 (warning emitted once per process).
double score_edmundson(const std::vector<Sentence>& summary, const Topic& topic,
                       const EdmundsonWeights& weights, const CueLexicon* cue_lexicon,
                       const StopwordSet& stopwords);

// Undirected sentence-similarity graph: an edge iff tf-cosine over unit
// counts exceeds the threshold. Symmetric, no self loops.
struct SentenceGraph {
    std::size_t node_count = 0;
    std::vector<std::vector<std::uint32_t>> adjacency;
    double threshold = 0.1;
};

SentenceGraph build_sentence_graph(const std::vector<Sentence>& sentences, double threshold);

// Power iteration with uniform teleport; dangling mass is redistributed
// uniformly, so the output sums to 1. Stops at L1 change < tol or max_iter.
std::vector<double> pagerank(const SentenceGraph& graph, double damping, double tol = 1e-8,
                             int max_iter = 100);

// Sum of PageRank centralities of the summary's sentences in the full
// source-sentence graph. A summary sentence matches a source sentence by
// exact unit-sequence identity; otherwise it borrows the PR of the
// nearest-cosine source sentence.
double score_lexrank(const std::vector<Sentence>& summary, const Topic& topic,
                     double damping = 0.85, double threshold = 0.1);

// Coverage score over distinct source bigrams present in the summary,
// weighted by document frequency; bigrams below min_df are ignored.
double score_icsi(const std::vector<Sentence>& summary, const Topic& topic, int min_df = 2);

// -KL(P_S || smooth(d, gamma)): 0 is the maximum, reached when P_S equals
// the smoothed source distribution.
double score_kl(const UnitDistribution& summary, const UnitDistribution& d, double gamma);

// -JS(P_S, d); finite without smoothing.
double score_js(const UnitDistribution& summary, const UnitDistribution& d);

// Divergence from background knowledge. More divergence from K means more
// new information, hence the positive sign by default; pass
// positive_is_better = false to flip.
double score_kl_back(const UnitDistribution& summary, const UnitDistribution& k, double gamma,
                     bool positive_is_better = true);
double score_js_back(const UnitDistribution& summary, const UnitDistribution& k,
                     bool positive_is_better = true);

}  // namespace infosumm
