#include "infosumm/infoquant.hpp"

#include <cmath>
#include <limits>

namespace infosumm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Bits max_entropy(std::size_t omega_size) {
    return std::log2(static_cast<double>(omega_size));
}

Bits entropy(const UnitDistribution& p) {
    double h = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            h -= p[i] * std::log2(p[i]);
        }
    }
    return h < 0.0 ? 0.0 : h;  // rounding can leave a tiny negative
}

Bits redundancy(const UnitDistribution& s) {
    double red = max_entropy(s.size()) - entropy(s);
    return red < 0.0 ? 0.0 : red;
}

Bits cross_entropy(const UnitDistribution& p, const UnitDistribution& q) {
    require_same_space(p, q);
    double ce = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            if (q[i] <= 0.0) {
                return kInf;
            }
            ce -= p[i] * std::log2(q[i]);
        }
    }
    return ce;
}

Bits relevance(const UnitDistribution& s, const UnitDistribution& d) {
    return -cross_entropy(s, d);
}

Bits informativeness(const UnitDistribution& s, const UnitDistribution& k) {
    return cross_entropy(s, k);
}

Bits kl_divergence(const UnitDistribution& p, const UnitDistribution& q) {
    require_same_space(p, q);
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 0.0) {
            if (q[i] <= 0.0) {
                return kInf;
            }
            kl += p[i] * std::log2(p[i] / q[i]);
        }
    }
    return kl < 0.0 ? 0.0 : kl;
}

Bits js_divergence(const UnitDistribution& p, const UnitDistribution& q) {
    require_same_space(p, q);
    std::vector<double> mid(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        mid[i] = 0.5 * (p[i] + q[i]);
    }
    UnitDistribution m(p.vocab() ? p.vocab() : q.vocab(), std::move(mid));
    double js = 0.5 * kl_divergence(p, m) + 0.5 * kl_divergence(q, m);
    if (js < 0.0) {
        return 0.0;
    }
    return js > 1.0 ? 1.0 : js;  // bounded by 1 bit; clamp rounding spill
}

Bits potential_information(const UnitDistribution& d, const UnitDistribution& k) {
    return cross_entropy(d, k);
}

}  // namespace infosumm
