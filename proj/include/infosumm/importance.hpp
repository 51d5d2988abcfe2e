#pragma once

#include "infosumm/infoquant.hpp"

namespace infosumm {

struct ImportanceParams {
    double alpha = 1.0;  // relevance strength
    double beta = 1.0;   // informativeness strength
};

// The importance-encoding distribution: target_i ∝ d_i^alpha / k_i^beta.
// Approximating it is what a summary is scored on.
struct ImportanceTarget {
    UnitDistribution dist;
    ImportanceParams params;
    double log_c = 0.0;           // log2 of the normalizer C
    Bits summarizability = 0.0;   // H(dist); low = few good summaries
};

// Builds the target from a source distribution d and a knowledge distribution
// k. k must be positive wherever the numerator d_i^alpha is (callers smooth
// k first); otherwise throws "unsmoothed knowledge". Powers are taken in log
// space so large vocabularies do not underflow.
ImportanceTarget build_target(const UnitDistribution& d, const UnitDistribution& k,
                              ImportanceParams params = {});

// θ_I(S) = -KL(P_S || P_target) <= 0, maximal (0) iff the summary
// distribution equals the target. -infinity flags a support violation.
Bits theta_i(const UnitDistribution& s, const ImportanceTarget& target);

struct ThetaDecomposition {
    Bits theta;            // -Red(S) + alpha*Rel(S,D) + beta*Inf(S,K)
    Bits redundancy;
    Bits relevance;
    Bits informativeness;
    double log_c;
};

// Componentwise form of θ_I. When all terms are finite, cross-checks the
// identity  theta == theta_i(s, target) + log_c - log2|Ω|  to 1e-6 (the
// H_max constant re-enters because redundancy uses the bounded form).
ThetaDecomposition theta_i_decomposed(const UnitDistribution& s, const UnitDistribution& d,
                                      const UnitDistribution& k, ImportanceParams params = {});

// Generic setting: uniform knowledge over the source support, smoothed.
UnitDistribution knowledge_generic(const UnitDistribution& source_dist, double gamma);

// Update setting: knowledge is the background documents' unit distribution,
// smoothed. Throws InputError when the topic has no background.
UnitDistribution knowledge_update(const Topic& topic,
                                  const std::shared_ptr<const Vocabulary>& vocab, double gamma);

// Query / personalized setting: scale the mass of the given units by epsilon
// and renormalize. Lower knowledge mass makes a unit more important in the
// target, so this boosts the query units. epsilon = 1 or an empty set is the
// identity.
UnitDistribution knowledge_query(const UnitDistribution& base,
                                 const std::vector<std::uint32_t>& query_units, double epsilon);

// H of the importance-encoding distribution.
Bits summarizability(const ImportanceTarget& target);

}  // namespace infosumm
