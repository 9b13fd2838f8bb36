#include "uent/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace uent::entropy {

void EntropyParams::validate() const {
    if (!(q >= 0.0) || !(s >= 0.0))
        throw std::invalid_argument("entropy params: q and s must be nonnegative");
}

Regime EntropyParams::regime() const {
    if (std::abs(q - 1.0) < tau_q) return Regime::von_neumann_limit;
    if (s < tau_s) return Regime::renyi_limit;
    if (s == 1.0) return Regime::tsallis_limit;
    return Regime::unified;
}

DomainFlags classify_domain(const EntropyParams& p) {
    DomainFlags f;
    f.monogamy_valid = (p.q >= 2.0) && (p.s >= 0.0) && (p.s <= 1.0) && (p.q * p.s <= 3.0);
    f.polygamy_valid = (p.q >= 1.0) && (p.q <= 2.0) && (p.s <= 1.0) &&
                       (p.s >= -p.q * p.q + 4.0 * p.q - 3.0);
    return f;
}

double unified_entropy_core(std::span<const double> lambdas, const EntropyParams& p) {
    p.validate();
    const Regime regime = p.regime();

    if (regime == Regime::von_neumann_limit) {
        double acc = 0.0;
        for (double l : lambdas)
            if (l > 0.0) acc -= l * std::log(l);
        return std::max(acc, 0.0);
    }

    double trq = 0.0;
    for (double l : lambdas)
        if (l > 0.0) trq += std::pow(l, p.q);

    double value;
    if (regime == Regime::renyi_limit) {
        value = std::log(trq) / (1.0 - p.q);
    } else if (regime == Regime::tsallis_limit) {
        value = (trq - 1.0) / (1.0 - p.q);
    } else {
        value = (std::pow(trq, p.s) - 1.0) / ((1.0 - p.q) * p.s);
    }
    if (value < 0.0 && value > -1e-12) value = 0.0;
    return value;
}

double unified_entropy(const linalg::Spectrum& spec, const EntropyParams& p) {
    return unified_entropy_core(spec.clipped_density(), p);
}

}  // namespace uent::entropy
