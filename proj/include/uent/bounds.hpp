#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "uent/measures.hpp"

namespace uent::bounds {

enum class Mode { monogamy, polygamy, negative_power };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);

// (k, delta) and the power applied to the entanglement measure. The exponent
// range picks the mode: >= 1 for monogamy, [0, 1] for polygamy, < 0 for the
// negative-power upper bound.
struct TighteningParams {
    double k = 1.0;
    double delta = 1.0;
    double exponent = 1.0;

    void validate(Mode mode) const;
};

unsigned hamming_weight(std::uint64_t j);

// ((1 + k^delta)^x - 1) / k^(delta x); >= x for x >= 1, <= x for x in [0,1],
// equal to 1 at x = 1.
double tightening_coefficient(const TighteningParams& t);

struct OrderingCheck {
    std::vector<std::size_t> permutation;  // descending sort of the inputs
    bool satisfied = false;
};

// Sorts descending and checks the pairwise gap condition
// k^delta * v_j >= v_{j+1} for consecutive sorted entries.
OrderingCheck check_gap_ordering(std::span<const double> values, const TighteningParams& t);

// factor * v_i >= sum_{j > i} v_j for every i on an already-descending list.
bool check_tail_condition(std::span<const double> sorted_desc, double factor);

enum class Weighting { plain, hamming, positional, hamming_baseline, positional_baseline };

// sum_j c^{w(j)} v_j^exponent over the (already ordered) values, with
// c = tightening_coefficient for hamming/positional, c = exponent for the
// baselines, w(j) the Hamming weight of j or j itself. plain ignores the
// exponent and returns sum_j v_j.
double weighted_power_sum(std::span<const double> sorted_desc, const TighteningParams& t,
                          Weighting weighting);

// (1/N) sum_j v_j^alpha for alpha < 0 and strictly positive values.
double inverse_power_mean(std::span<const double> values, double alpha);

struct BoundReport {
    Mode mode = Mode::monogamy;
    double q = 2.0, s = 1.0;
    double k = 1.0, delta = 1.0, exponent = 1.0;
    double lhs_measure = 0.0;  // E or E^a of the full split
    double lhs = 0.0;          // lhs_measure ^ exponent
    std::vector<double> pair_values;        // per B party, input order
    std::vector<std::size_t> ordering;      // descending permutation applied
    std::map<std::string, double> rhs;
    std::map<std::string, double> slack;    // lhs - rhs (monogamy), rhs - lhs otherwise
    std::map<std::string, bool> preconditions;

    std::string to_json_string(int indent = -1) const;
};

struct EvaluationOptions {
    measures::RoofOptions roof;
    // Convex-roof LHS for mixed global states (3 qubits, rank <= 2 only).
    bool allow_mixed_lhs = false;
};

// Assembles a report from already-computed measure values.
BoundReport evaluate_bounds_from_values(double lhs_measure, std::span<const double> pair_values,
                                        const entropy::EntropyParams& p,
                                        const TighteningParams& t, Mode mode);

// Per-pair measure values (UE for monogamy / negative-power, UEoA for
// polygamy) of the reductions onto {focus, B_j}.
std::vector<double> pairwise_measures(const states::PureState& psi,
                                      const states::PartitionSpec& part,
                                      const entropy::EntropyParams& p, Mode mode,
                                      const measures::RoofOptions& opts);
std::vector<double> pairwise_measures(const states::DensityMatrix& rho,
                                      const states::PartitionSpec& part,
                                      const entropy::EntropyParams& p, Mode mode,
                                      const measures::RoofOptions& opts);

BoundReport evaluate_bounds(const states::PureState& psi, const states::PartitionSpec& part,
                            const entropy::EntropyParams& p, const TighteningParams& t, Mode mode,
                            const EvaluationOptions& opts = {});
BoundReport evaluate_bounds(const states::DensityMatrix& rho, const states::PartitionSpec& part,
                            const entropy::EntropyParams& p, const TighteningParams& t, Mode mode,
                            const EvaluationOptions& opts = {});

}  // namespace uent::bounds
