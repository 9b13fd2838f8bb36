#include "uent/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace uent::bounds {

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::monogamy: return "monogamy";
        case Mode::polygamy: return "polygamy";
        case Mode::negative_power: return "negative-power";
    }
    return "monogamy";
}

Mode mode_from_name(const std::string& name) {
    if (name == "monogamy") return Mode::monogamy;
    if (name == "polygamy") return Mode::polygamy;
    if (name == "negative-power") return Mode::negative_power;
    throw std::invalid_argument("unknown mode: " + name);
}

void TighteningParams::validate(Mode mode) const {
    if (!(k > 0.0) || k > 1.0) throw std::invalid_argument("tightening params: k must be in (0, 1]");
    if (delta < 1.0) throw std::invalid_argument("tightening params: delta must be >= 1");
    switch (mode) {
        case Mode::monogamy:
            if (exponent < 1.0)
                throw std::invalid_argument("tightening params: monogamy exponent must be >= 1");
            break;
        case Mode::polygamy:
            if (exponent < 0.0 || exponent > 1.0)
                throw std::invalid_argument("tightening params: polygamy exponent must be in [0, 1]");
            break;
        case Mode::negative_power:
            if (exponent >= 0.0)
                throw std::invalid_argument("tightening params: negative-power exponent must be < 0");
            break;
    }
}

unsigned hamming_weight(std::uint64_t j) { return static_cast<unsigned>(std::popcount(j)); }

double tightening_coefficient(const TighteningParams& t) {
    if (!(t.k > 0.0) || t.k > 1.0 || t.delta < 1.0)
        throw std::invalid_argument("tightening_coefficient: k or delta out of range");
    const double kd = std::pow(t.k, t.delta);
    return (std::pow(1.0 + kd, t.exponent) - 1.0) / std::pow(kd, t.exponent);
}

OrderingCheck check_gap_ordering(std::span<const double> values, const TighteningParams& t) {
    OrderingCheck out;
    out.permutation.resize(values.size());
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const double kd = std::pow(t.k, t.delta);
    out.satisfied = true;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (kd * values[out.permutation[i]] < values[out.permutation[i + 1]]) {
            out.satisfied = false;
            break;
        }
    }
    return out;
}

bool check_tail_condition(std::span<const double> sorted_desc, double factor) {
    double tail = std::accumulate(sorted_desc.begin(), sorted_desc.end(), 0.0);
    for (std::size_t i = 0; i + 1 < sorted_desc.size(); ++i) {
        tail -= sorted_desc[i];
        if (factor * sorted_desc[i] < tail) return false;
    }
    return true;
}

double weighted_power_sum(std::span<const double> sorted_desc, const TighteningParams& t,
                          Weighting weighting) {
    if (weighting == Weighting::plain)
        return std::accumulate(sorted_desc.begin(), sorted_desc.end(), 0.0);

    const bool positional =
        weighting == Weighting::positional || weighting == Weighting::positional_baseline;
    const bool baseline =
        weighting == Weighting::hamming_baseline || weighting == Weighting::positional_baseline;
    const double coeff = baseline ? t.exponent : tightening_coefficient(t);

    double acc = 0.0;
    for (std::size_t j = 0; j < sorted_desc.size(); ++j) {
        const double w = positional ? static_cast<double>(j)
                                    : static_cast<double>(hamming_weight(j));
        acc += std::pow(coeff, w) * std::pow(sorted_desc[j], t.exponent);
    }
    return acc;
}

double inverse_power_mean(std::span<const double> values, double alpha) {
    if (alpha >= 0.0) throw std::invalid_argument("inverse_power_mean: alpha must be negative");
    if (values.empty()) throw std::invalid_argument("inverse_power_mean: no values");
    double acc = 0.0;
    for (double v : values) {
        if (!(v > 0.0))
            throw std::domain_error("inverse_power_mean: undefined for a vanishing measure value");
        acc += std::pow(v, alpha);
    }
    return acc / static_cast<double>(values.size());
}

std::string BoundReport::to_json_string(int indent) const {
    nlohmann::json j;
    j["lhs"] = lhs;
    j["lhs_measure"] = lhs_measure;
    j["pair_values"] = pair_values;
    j["ordering"] = ordering;
    j["rhs"] = rhs;
    j["slack"] = slack;
    j["preconditions"] = preconditions;
    j["params"] = {{"mode", mode_name(mode)}, {"q", q},     {"s", s},
                   {"k", k},                  {"delta", delta}, {"exponent", exponent}};
    return j.dump(indent);
}

BoundReport evaluate_bounds_from_values(double lhs_measure, std::span<const double> pair_values,
                                        const entropy::EntropyParams& p,
                                        const TighteningParams& t, Mode mode) {
    p.validate();
    t.validate(mode);
    if (pair_values.empty()) throw std::invalid_argument("evaluate_bounds: no pairwise values");
    const auto flags = entropy::classify_domain(p);
    if ((mode == Mode::monogamy || mode == Mode::negative_power) && !flags.monogamy_valid)
        throw std::domain_error("evaluate_bounds: (q, s) outside the monogamy-valid region");
    if (mode == Mode::polygamy && !flags.polygamy_valid)
        throw std::domain_error("evaluate_bounds: (q, s) outside the polygamy-valid region");

    BoundReport rep;
    rep.mode = mode;
    rep.q = p.q;
    rep.s = p.s;
    rep.k = t.k;
    rep.delta = t.delta;
    rep.exponent = t.exponent;
    rep.lhs_measure = lhs_measure;
    rep.pair_values.assign(pair_values.begin(), pair_values.end());

    const OrderingCheck ordering = check_gap_ordering(pair_values, t);
    rep.ordering = ordering.permutation;
    std::vector<double> sorted(pair_values.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i] = pair_values[ordering.permutation[i]];

    if (mode == Mode::negative_power) {
        rep.lhs = std::pow(lhs_measure, t.exponent);
        const bool positive = std::all_of(sorted.begin(), sorted.end(), [](double v) { return v > 0.0; });
        rep.preconditions["inverse-power-mean"] = positive && lhs_measure > 0.0;
        if (rep.preconditions["inverse-power-mean"]) {
            const double rhs = inverse_power_mean(sorted, t.exponent);
            rep.rhs["inverse-power-mean"] = rhs;
            rep.slack["inverse-power-mean"] = rhs - rep.lhs;
        }
        return rep;
    }

    rep.lhs = std::pow(lhs_measure, t.exponent);
    const double kd = std::pow(t.k, t.delta);
    const bool tail_kd = check_tail_condition(sorted, kd);
    const bool tail_unit = check_tail_condition(sorted, 1.0);

    rep.preconditions["plain"] = true;
    rep.preconditions["hamming"] = ordering.satisfied;
    rep.preconditions["positional"] = tail_kd;
    rep.preconditions["hamming-baseline"] = true;
    rep.preconditions["positional-baseline"] = tail_unit;

    rep.rhs["plain"] = weighted_power_sum(sorted, t, Weighting::plain);
    rep.rhs["hamming"] = weighted_power_sum(sorted, t, Weighting::hamming);
    rep.rhs["positional"] = weighted_power_sum(sorted, t, Weighting::positional);
    rep.rhs["hamming-baseline"] = weighted_power_sum(sorted, t, Weighting::hamming_baseline);
    rep.rhs["positional-baseline"] = weighted_power_sum(sorted, t, Weighting::positional_baseline);

    const double sign = (mode == Mode::monogamy) ? 1.0 : -1.0;
    for (const auto& [name, rhs] : rep.rhs) {
        const double lhs_for_bound = (name == "plain") ? lhs_measure : rep.lhs;
        rep.slack[name] = sign * (lhs_for_bound - rhs);
    }

    if (mode == Mode::monogamy &&
        rep.rhs["hamming"] < rep.rhs["hamming-baseline"] - 1e-12)
        throw std::logic_error(
            "evaluate_bounds: hamming bound fell below its baseline, which is algebraically "
            "impossible");
    return rep;
}

namespace {

template <typename State>
std::vector<double> pairwise_impl(const State& state, const states::PartitionSpec& part,
                                  const entropy::EntropyParams& p, Mode mode,
                                  const measures::RoofOptions& opts) {
    std::vector<double> out;
    out.reserve(part.others.size());
    for (std::size_t b : part.others) {
        std::vector<std::size_t> keep{std::min(part.focus, b), std::max(part.focus, b)};
        states::DensityMatrix pair = states::reduce(state, keep);
        if (pair.dim() != 4)
            throw std::invalid_argument("pairwise_measures: B parties must be single qubits");
        out.push_back(mode == Mode::polygamy ? measures::ueoa_two_qubit(pair, p, opts)
                                             : measures::ue_two_qubit(pair, p, opts));
    }
    return out;
}

}  // namespace

std::vector<double> pairwise_measures(const states::PureState& psi,
                                      const states::PartitionSpec& part,
                                      const entropy::EntropyParams& p, Mode mode,
                                      const measures::RoofOptions& opts) {
    return pairwise_impl(psi, part, p, mode, opts);
}

std::vector<double> pairwise_measures(const states::DensityMatrix& rho,
                                      const states::PartitionSpec& part,
                                      const entropy::EntropyParams& p, Mode mode,
                                      const measures::RoofOptions& opts) {
    return pairwise_impl(rho, part, p, mode, opts);
}

BoundReport evaluate_bounds(const states::PureState& psi, const states::PartitionSpec& part,
                            const entropy::EntropyParams& p, const TighteningParams& t, Mode mode,
                            const EvaluationOptions& opts) {
    psi.validate();
    part.validate(psi.dims.size());
    // Pure across the full split: E and E^a both reduce to the focus entropy.
    const double lhs = measures::pure_state_ue(psi, part, p);
    const auto pairs = pairwise_measures(psi, part, p, mode, opts.roof);
    return evaluate_bounds_from_values(lhs, pairs, p, t, mode);
}

BoundReport evaluate_bounds(const states::DensityMatrix& rho, const states::PartitionSpec& part,
                            const entropy::EntropyParams& p, const TighteningParams& t, Mode mode,
                            const EvaluationOptions& opts) {
    rho.validate();
    part.validate(rho.dims.size());
    if (!opts.allow_mixed_lhs)
        throw std::invalid_argument(
            "evaluate_bounds: mixed global states need the mixed-LHS option (3-qubit rank <= 2 "
            "only)");
    if (rho.dims.size() != 3 ||
        !std::all_of(rho.dims.begin(), rho.dims.end(), [](std::size_t d) { return d == 2; }))
        throw std::invalid_argument("evaluate_bounds: mixed-LHS supports 3-qubit states only");
    const auto es = linalg::hermitian_eigensystem(rho.matrix);
    const auto rank = std::count_if(es.spectrum.values.begin(), es.spectrum.values.end(),
                                    [](double v) { return v > 1e-12; });
    if (rank > 2)
        throw std::invalid_argument("evaluate_bounds: mixed-LHS supports rank <= 2 states only");

    const auto dir = (mode == Mode::polygamy) ? measures::RoofDirection::maximize
                                              : measures::RoofDirection::minimize;
    const auto roof = measures::convex_roof(rho, part, p, dir, opts.roof);
    const auto pairs = pairwise_measures(rho, part, p, mode, opts.roof);
    return evaluate_bounds_from_values(roof.value, pairs, p, t, mode);
}

}  // namespace uent::bounds
