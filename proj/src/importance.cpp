#include "infosumm/importance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace infosumm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ImportanceTarget build_target(const UnitDistribution& d, const UnitDistribution& k,
                              ImportanceParams params) {
    require_same_space(d, k);
    if (!(params.alpha >= 0.0) || !(params.beta >= 0.0) || !std::isfinite(params.alpha) ||
        !std::isfinite(params.beta)) {
        throw std::invalid_argument("alpha and beta must be finite and non-negative");
    }
    const std::size_t n = d.size();
    // log2 of d_i^alpha / k_i^beta; -inf marks zero target mass.
    std::vector<double> log_ratio(n, -kInf);
    double max_ratio = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const bool numerator_positive = params.alpha == 0.0 || d[i] > 0.0;
        if (!numerator_positive) {
            continue;  // d_i^alpha = 0 forces zero mass regardless of k_i
        }
        if (params.beta > 0.0 && k[i] <= 0.0) {
            throw std::invalid_argument("unsmoothed knowledge");
        }
        double lr = 0.0;
        if (params.alpha > 0.0) {
            lr += params.alpha * std::log2(d[i]);
        }
        if (params.beta > 0.0) {
            lr -= params.beta * std::log2(k[i]);
        }
        log_ratio[i] = lr;
        max_ratio = std::max(max_ratio, lr);
    }

    // log-sum-exp normalization, base 2
    double scaled_sum = 0.0;
    for (double lr : log_ratio) {
        if (lr > -kInf) {
            scaled_sum += std::exp2(lr - max_ratio);
        }
    }
    const double log_c = max_ratio + std::log2(scaled_sum);

    std::vector<double> mass(n, 0.0);
    double mass_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (log_ratio[i] > -kInf) {
            mass[i] = std::exp2(log_ratio[i] - log_c);
            mass_sum += mass[i];
        }
    }
    for (double& m : mass) {
        m /= mass_sum;
    }

    ImportanceTarget target{UnitDistribution(d.vocab() ? d.vocab() : k.vocab(), std::move(mass)),
                            params, log_c, 0.0};
    target.summarizability = entropy(target.dist);
    return target;
}

Bits theta_i(const UnitDistribution& s, const ImportanceTarget& target) {
    const Bits kl = kl_divergence(s, target.dist);
    return std::isinf(kl) ? -kInf : -kl;
}

ThetaDecomposition theta_i_decomposed(const UnitDistribution& s, const UnitDistribution& d,
                                      const UnitDistribution& k, ImportanceParams params) {
    ImportanceTarget target = build_target(d, k, params);
    ThetaDecomposition out;
    out.redundancy = redundancy(s);
    out.relevance = relevance(s, d);
    out.informativeness = informativeness(s, k);
    out.log_c = target.log_c;
    out.theta = -out.redundancy + params.alpha * out.relevance + params.beta * out.informativeness;

    const Bits direct = theta_i(s, target);
    if (std::isfinite(out.theta) && std::isfinite(direct)) {
        const double expected = direct + target.log_c - max_entropy(s.size());
        if (std::abs(out.theta - expected) > 1e-6) {
            throw std::logic_error("theta decomposition identity violated");
        }
    }
    return out;
}

UnitDistribution knowledge_generic(const UnitDistribution& source_dist, double gamma) {
    return smooth(uniform_over_support(source_dist), gamma);
}

UnitDistribution knowledge_update(const Topic& topic,
                                  const std::shared_ptr<const Vocabulary>& vocab, double gamma) {
    if (!topic.has_background()) {
        throw InputError("topic " + topic.id + ": missing background documents");
    }
    return smooth(distribution_of(unit_sequences(topic.background_docs), vocab), gamma);
}

UnitDistribution knowledge_query(const UnitDistribution& base,
                                 const std::vector<std::uint32_t>& query_units, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    if (epsilon == 1.0 || query_units.empty()) {
        return base;
    }
    std::vector<double> mass(base.mass());
    for (std::uint32_t id : query_units) {
        if (id >= mass.size()) {
            throw std::invalid_argument("query unit id out of range");
        }
        mass[id] *= epsilon;
    }
    double sum = 0.0;
    for (double m : mass) {
        sum += m;
    }
    for (double& m : mass) {
        m /= sum;
    }
    return UnitDistribution(base.vocab(), std::move(mass));
}

Bits summarizability(const ImportanceTarget& target) {
    return target.summarizability;
}

}  // namespace infosumm
