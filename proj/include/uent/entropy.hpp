#pragma once

#include <span>

#include "uent/linalg.hpp"

namespace uent::entropy {

// Branch windows around the singular parameter loci.
inline constexpr double tau_q = 1e-6;
inline constexpr double tau_s = 1e-9;

enum class Regime { unified, renyi_limit, tsallis_limit, von_neumann_limit };

struct EntropyParams {
    double q = 2.0;
    double s = 1.0;

    void validate() const;
    Regime regime() const;
};

struct DomainFlags {
    bool monogamy_valid = false;  // q >= 2, 0 <= s <= 1, q*s <= 3
    bool polygamy_valid = false;  // 1 <= q <= 2, -q^2 + 4q - 3 <= s <= 1
};

DomainFlags classify_domain(const EntropyParams& p);

// Entropy of a clipped, renormalized density spectrum (any order, zeros
// allowed). Natural-log limit branches; see unified_entropy(Spectrum) for
// the validating entry point.
double unified_entropy_core(std::span<const double> lambdas, const EntropyParams& p);

double unified_entropy(const linalg::Spectrum& spec, const EntropyParams& p);

}  // namespace uent::entropy
