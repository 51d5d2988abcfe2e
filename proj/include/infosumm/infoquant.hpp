#pragma once

#include "infosumm/corpus.hpp"

namespace infosumm {

// Every quantity in this module uses base-2 logarithms; values are in bits.
// 0*log 0 is 0 throughout. Cross-entropy style quantities return +infinity
// when the second argument has no mass where the first has some; callers
// check std::isinf rather than catching anything.
using Bits = double;

Bits max_entropy(std::size_t omega_size);  // log2 |Ω|

// H(p) = -Σ p_i log2 p_i, in [0, log2 |Ω|].
Bits entropy(const UnitDistribution& p);

// Red(S) = H_max - H(S). Non-negative; rank-identical to -H(S) per topic.
Bits redundancy(const UnitDistribution& s);

// CE(p,q) = -Σ p_i log2 q_i. CE(p,p) = H(p).
Bits cross_entropy(const UnitDistribution& p, const UnitDistribution& q);

// Rel(S,D) = -CE(S,D). Always <= 0; higher is better.
Bits relevance(const UnitDistribution& s, const UnitDistribution& d);

// Inf(S,K) = CE(S,K). Higher means more new information relative to K.
Bits informativeness(const UnitDistribution& s, const UnitDistribution& k);

// KL(p||q) = Σ p_i log2(p_i / q_i) = CE(p,q) - H(p). Non-negative.
Bits kl_divergence(const UnitDistribution& p, const UnitDistribution& q);

// JS(p,q) = KL(p||m)/2 + KL(q||m)/2 with m = (p+q)/2.
// Symmetric, finite on disjoint supports, in [0, 1] bits.
Bits js_divergence(const UnitDistribution& p, const UnitDistribution& q);

// PI_K(D) = CE(D,K): the most new information any summary of D can carry
// for a user knowing K. Reported as a diagnostic, never enforced.
Bits potential_information(const UnitDistribution& d, const UnitDistribution& k);

}  // namespace infosumm
