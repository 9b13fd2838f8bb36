#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "uent/bounds.hpp"
#include "uent/rng.hpp"

using namespace uent;
using bounds::Mode;
using bounds::TighteningParams;
using bounds::Weighting;

namespace {

const entropy::EntropyParams kT2{2.0, 1.0};

measures::RoofOptions quick_opts() {
    measures::RoofOptions o;
    o.restarts = 12;
    o.threads = 2;
    return o;
}

states::PureState example_state() {
    states::SchmidtParams sp;
    sp.lambdas = {std::sqrt(3.0) / 3.0, 0.0, std::sqrt(2.0) / 2.0, std::sqrt(6.0) / 6.0, 0.0};
    return states::build_generalized_schmidt(sp);
}

states::PartitionSpec three_qubit_part() {
    states::PartitionSpec p;
    p.focus = 0;
    p.others = {1, 2};
    return p;
}

}  // namespace

TEST_CASE("hamming weight basics and the bitwise oracle") {
    CHECK(bounds::hamming_weight(0) == 0);
    CHECK(bounds::hamming_weight(5) == 2);
    for (std::uint64_t j = 0; j < (1u << 16); ++j) {
        unsigned brute = 0;
        for (std::uint64_t x = j; x; x >>= 1) brute += static_cast<unsigned>(x & 1);
        REQUIRE(bounds::hamming_weight(j) == brute);
        REQUIRE(bounds::hamming_weight(j) <= j);
    }
}

TEST_CASE("tightening coefficient point values") {
    CHECK(bounds::tightening_coefficient({0.3, 2.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bounds::tightening_coefficient({1.0, 1.0, 2.0}) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(bounds::tightening_coefficient({0.75, 1.0, 2.0}) ==
          doctest::Approx(11.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(bounds::tightening_coefficient({0.0, 1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(bounds::tightening_coefficient({0.5, 0.5, 2.0}), std::invalid_argument);
}

TEST_CASE("scalar power lemma holds on 10^4 random tuples per direction") {
    rng::Xoshiro256 gen(4242);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const double k = 0.05 + 0.95 * gen.uniform();
        const double delta = 1.0 + 4.0 * gen.uniform();
        const double kd = std::pow(k, delta);
        const double x = kd * gen.uniform();
        const double alpha = 1.0 + 5.0 * gen.uniform();
        const double c = bounds::tightening_coefficient({k, delta, alpha});
        REQUIRE(std::pow(1.0 + x, alpha) >= 1.0 + c * std::pow(x, alpha) - 1e-12);
        ++checked;
    }
    for (int i = 0; i < 10000; ++i) {
        const double k = 0.05 + 0.95 * gen.uniform();
        const double delta = 1.0 + 4.0 * gen.uniform();
        const double kd = std::pow(k, delta);
        const double x = kd * gen.uniform();
        const double beta = gen.uniform();
        const double c = bounds::tightening_coefficient({k, delta, beta});
        REQUIRE(std::pow(1.0 + x, beta) <= 1.0 + c * std::pow(x, beta) + 1e-12);
        ++checked;
    }
    CHECK(checked == 20000);
}

TEST_CASE("coefficient dominates the exponent on both ranges") {
    for (double k : {0.1, 0.5, 0.75, 1.0})
        for (double delta : {1.0, 2.0, 4.0}) {
            for (double alpha : {1.0, 1.5, 2.0, 3.0, 6.0})
                CHECK(bounds::tightening_coefficient({k, delta, alpha}) >= alpha - 1e-12);
            for (double beta : {0.0, 0.25, 0.5, 0.8, 1.0})
                CHECK(bounds::tightening_coefficient({k, delta, beta}) <= beta + 1e-12);
        }
    // Boundary sample: k = delta = 1 gives 2^x - 1, equal at x = 1.
    CHECK(bounds::tightening_coefficient({1.0, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gap ordering check sorts and compares") {
    const std::vector<double> a{0.3, 0.1};
    const auto res_a = bounds::check_gap_ordering(a, {0.75, 1.0, 2.0});
    CHECK(res_a.satisfied);  // 0.225 >= 0.1
    CHECK(res_a.permutation == std::vector<std::size_t>{0, 1});

    const std::vector<double> b{0.29, 0.3};
    const auto res_b = bounds::check_gap_ordering(b, {0.5, 1.0, 2.0});
    CHECK_FALSE(res_b.satisfied);  // 0.15 < 0.29
    CHECK(res_b.permutation == std::vector<std::size_t>{1, 0});

    const std::vector<double> single{0.7};
    CHECK(bounds::check_gap_ordering(single, {0.5, 1.0, 2.0}).satisfied);
}

TEST_CASE("tail condition check") {
    CHECK(bounds::check_tail_condition(std::vector<double>{0.5, 0.2, 0.05}, 1.0));
    CHECK_FALSE(bounds::check_tail_condition(std::vector<double>{0.5, 0.3, 0.3}, 1.0));
    CHECK(bounds::check_tail_condition(std::vector<double>{0.42}, 1.0));
}

TEST_CASE("weighted power sums reproduce the worked-example values") {
    const std::vector<double> v{1.0 / 6.0, 1.0 / 9.0};

    TighteningParams unit{0.75, 1.0, 1.0};
    CHECK(bounds::weighted_power_sum(v, unit, Weighting::hamming) ==
          doctest::Approx(5.0 / 18.0).epsilon(1e-14));

    TighteningParams a2{0.75, 1.0, 2.0};
    CHECK(bounds::weighted_power_sum(v, a2, Weighting::hamming) ==
          doctest::Approx(1.0 / 36.0 + 11.0 / 243.0).epsilon(1e-13));
    CHECK(bounds::weighted_power_sum(v, a2, Weighting::hamming_baseline) ==
          doctest::Approx(1.0 / 36.0 + 2.0 / 81.0).epsilon(1e-13));
    CHECK(bounds::weighted_power_sum(v, a2, Weighting::plain) ==
          doctest::Approx(5.0 / 18.0).epsilon(1e-14));
}

TEST_CASE("positional weighting diverges from hamming only at the third party") {
    const std::vector<double> v{0.3, 0.2, 0.1};
    TighteningParams t{0.75, 1.0, 2.0};
    const double c = bounds::tightening_coefficient(t);
    const double hamming = bounds::weighted_power_sum(v, t, Weighting::hamming);
    const double positional = bounds::weighted_power_sum(v, t, Weighting::positional);
    CHECK(positional - hamming == doctest::Approx((c * c - c) * 0.01).epsilon(1e-10));
    CHECK(positional >= hamming);
}

TEST_CASE("inverse power mean point values and input policing") {
    const double e = std::exp(1.0);
    CHECK(bounds::inverse_power_mean(std::vector<double>{e, e}, -1.0) ==
          doctest::Approx(1.0 / e).epsilon(1e-14));
    CHECK(bounds::inverse_power_mean(std::vector<double>{0.5, 0.25}, -2.0) ==
          doctest::Approx(10.0).epsilon(1e-14));
    CHECK_THROWS_AS(bounds::inverse_power_mean(std::vector<double>{0.5, 0.0}, -1.0),
                    std::domain_error);
    CHECK_THROWS_AS(bounds::inverse_power_mean(std::vector<double>{0.5}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("W-state negative-power bound computed by brute force") {
    states::PureState w;
    w.dims = {2, 2, 2};
    w.amplitudes.assign(8, 0.0);
    const double a = 1.0 / std::sqrt(3.0);
    w.amplitudes[1] = w.amplitudes[2] = w.amplitudes[4] = a;

    // Pairwise values via the closed form, cross-checked by the optimizer.
    const auto rho_ab = states::reduce(w, {0, 1});
    const double t2_closed = measures::tsallis2_two_qubit(rho_ab);
    CHECK(t2_closed == doctest::Approx(2.0 / 9.0).epsilon(1e-10));
    measures::RoofOptions opts = quick_opts();
    opts.allow_fast_path = false;
    CHECK(measures::ue_two_qubit(rho_ab, kT2, opts) == doctest::Approx(2.0 / 9.0).epsilon(5e-4));

    const std::vector<double> pairs{2.0 / 9.0, 2.0 / 9.0};
    CHECK(bounds::inverse_power_mean(pairs, -1.0) == doctest::Approx(4.5).epsilon(1e-10));
    const double lhs = std::pow(4.0 / 9.0, -1.0);
    CHECK(lhs == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(lhs < 4.5);
}

TEST_CASE("report assembly from the worked-example printed values") {
    const std::vector<double> printed{1.0 / 6.0, 1.0 / 9.0};

    SUBCASE("monogamy at exponent 1") {
        const auto rep =
            bounds::evaluate_bounds_from_values(4.0 / 9.0, printed, kT2, {0.75, 1.0, 1.0},
                                                Mode::monogamy);
        CHECK(rep.slack.at("hamming") == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
        CHECK(rep.slack.at("plain") == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
        CHECK(rep.preconditions.at("hamming"));  // 0.75/6 = 0.125 >= 1/9
        CHECK(rep.ordering == std::vector<std::size_t>{0, 1});
    }

    SUBCASE("monogamy at exponent 2 keeps the bound hierarchy") {
        const auto rep =
            bounds::evaluate_bounds_from_values(4.0 / 9.0, printed, kT2, {0.75, 1.0, 2.0},
                                                Mode::monogamy);
        CHECK(rep.lhs == doctest::Approx(16.0 / 81.0).epsilon(1e-13));
        CHECK(rep.rhs.at("hamming") >= rep.rhs.at("hamming-baseline"));
        CHECK(rep.rhs.at("positional") >= rep.rhs.at("hamming") - 1e-15);
        CHECK(rep.slack.at("hamming") > 0.0);
    }

    SUBCASE("polygamy saturates at exponent 1 with the assisted values") {
        const std::vector<double> assisted{1.0 / 3.0, 1.0 / 9.0};
        const auto rep = bounds::evaluate_bounds_from_values(
            4.0 / 9.0, assisted, kT2, {2.0 / 3.0, 1.0, 1.0}, Mode::polygamy);
        CHECK(rep.slack.at("plain") == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(rep.rhs.at("hamming") == doctest::Approx(4.0 / 9.0).epsilon(1e-13));
        CHECK(rep.preconditions.at("hamming"));  // (2/3)(1/3) = 2/9 >= 1/9
    }
}

TEST_CASE("report JSON carries the stable field names") {
    const auto rep = bounds::evaluate_bounds_from_values(
        0.4, std::vector<double>{0.2, 0.1}, kT2, {0.75, 1.0, 2.0}, Mode::monogamy);
    const std::string js = rep.to_json_string();
    for (const char* key : {"\"lhs\"", "\"rhs\"", "\"slack\"", "\"preconditions\"", "\"ordering\"",
                            "\"params\"", "\"hamming\"", "\"positional\"", "\"plain\""})
        CHECK(js.find(key) != std::string::npos);
}

TEST_CASE("mode and domain policing") {
    const std::vector<double> v{0.2, 0.1};
    CHECK_THROWS_AS(bounds::evaluate_bounds_from_values(0.4, v, {3.0, 1.0}, {1.0, 1.0, 0.5},
                                                        Mode::polygamy),
                    std::domain_error);
    CHECK_THROWS_AS(bounds::evaluate_bounds_from_values(0.4, v, {1.5, 0.9}, {1.0, 1.0, 2.0},
                                                        Mode::monogamy),
                    std::domain_error);
    CHECK_THROWS_AS(bounds::evaluate_bounds_from_values(0.4, v, kT2, {1.0, 1.0, 0.5},
                                                        Mode::monogamy),
                    std::invalid_argument);
    CHECK_THROWS_AS(bounds::evaluate_bounds_from_values(0.4, v, kT2, {1.0, 1.0, 2.0},
                                                        Mode::polygamy),
                    std::invalid_argument);
    CHECK_THROWS_AS(bounds::evaluate_bounds_from_values(0.4, v, kT2, {1.0, 1.0, -1.0},
                                                        Mode::monogamy),
                    std::invalid_argument);
}

TEST_CASE("full evaluation of the worked example saturates the plain bound") {
    measures::validate_fast_path(8, 5e-4, quick_opts());
    bounds::EvaluationOptions opts;
    opts.roof = quick_opts();
    const auto rep = bounds::evaluate_bounds(example_state(), three_qubit_part(), kT2,
                                             {0.75, 1.0, 1.0}, Mode::monogamy, opts);
    // Computed pairwise values are 1/3 and 1/9; the plain bound saturates.
    CHECK(rep.lhs_measure == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(rep.pair_values[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(rep.pair_values[1] == doctest::Approx(1.0 / 9.0).epsilon(1e-9));
    CHECK(rep.slack.at("plain") == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("product state reports vanish entirely") {
    states::PureState product;
    product.dims = {2, 2, 2};
    product.amplitudes.assign(8, 0.0);
    product.amplitudes[0] = 1.0;
    bounds::EvaluationOptions opts;
    opts.roof = quick_opts();
    const auto rep = bounds::evaluate_bounds(product, three_qubit_part(), kT2, {0.75, 1.0, 2.0},
                                             Mode::monogamy, opts);
    CHECK(rep.lhs == 0.0);
    for (const auto& [name, slack] : rep.slack) {
        CHECK(std::abs(slack) < 1e-12);
    }
    CHECK(rep.preconditions.at("hamming"));  // vacuous ordering
}

TEST_CASE("random-state campaign slice: monogamy, polygamy, hierarchy, strict negative power") {
    measures::validate_fast_path(8, 5e-4, quick_opts());
    measures::RoofOptions ropts = quick_opts();
    states::PartitionSpec part = three_qubit_part();

    int hierarchy_checked = 0;
    for (int i = 0; i < 12; ++i) {
        const states::PureState psi = states::haar_random_pure(3, 5000 + i);
        const double lhs = measures::pure_state_ue(psi, part, kT2);
        const auto ue_pairs = bounds::pairwise_measures(psi, part, kT2, Mode::monogamy, ropts);
        const auto ua_pairs = bounds::pairwise_measures(psi, part, kT2, Mode::polygamy, ropts);

        for (double alpha : {1.0, 2.0}) {
            const auto rep = bounds::evaluate_bounds_from_values(lhs, ue_pairs, kT2,
                                                                 {0.75, 1.0, alpha}, Mode::monogamy);
            if (rep.preconditions.at("hamming")) CHECK(rep.slack.at("hamming") >= -1e-7);
            if (rep.preconditions.at("positional")) {
                CHECK(rep.slack.at("positional") >= -1e-7);
                CHECK(rep.rhs.at("positional") >= rep.rhs.at("hamming") - 1e-12);
                ++hierarchy_checked;
            }
            CHECK(rep.rhs.at("hamming") >= rep.rhs.at("hamming-baseline") - 1e-12);
        }
        for (double beta : {0.5, 1.0}) {
            const auto rep = bounds::evaluate_bounds_from_values(lhs, ua_pairs, kT2,
                                                                 {0.75, 1.0, beta}, Mode::polygamy);
            if (rep.preconditions.at("hamming")) CHECK(rep.slack.at("hamming") >= -5e-4);
            if (rep.preconditions.at("positional")) {
                CHECK(rep.slack.at("positional") >= -5e-4);
                CHECK(rep.rhs.at("positional") <= rep.rhs.at("hamming") + 1e-12);
            }
            CHECK(rep.rhs.at("hamming") <= rep.rhs.at("hamming-baseline") + 1e-12);
        }
        if (*std::min_element(ue_pairs.begin(), ue_pairs.end()) > 1e-3) {
            for (double alpha : {-0.5, -1.0}) {
                const auto rep = bounds::evaluate_bounds_from_values(
                    lhs, ue_pairs, kT2, {0.75, 1.0, alpha}, Mode::negative_power);
                REQUIRE(rep.preconditions.at("inverse-power-mean"));
                CHECK(rep.slack.at("inverse-power-mean") > 0.0);
            }
        }
    }
    CHECK(hierarchy_checked > 0);
}

TEST_CASE("mixed-state evaluation requires the flag and the rank limit") {
    // Rank-2 mixture of two 3-qubit pure states.
    const states::PureState a = states::haar_random_pure(3, 1);
    const states::PureState b = states::haar_random_pure(3, 2);
    states::DensityMatrix rho;
    rho.dims = {2, 2, 2};
    rho.matrix = linalg::ComplexMatrix(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            rho.matrix(i, j) = 0.6 * a.amplitudes[i] * std::conj(a.amplitudes[j]) +
                               0.4 * b.amplitudes[i] * std::conj(b.amplitudes[j]);

    bounds::EvaluationOptions no_flag;
    no_flag.roof = quick_opts();
    CHECK_THROWS_AS(bounds::evaluate_bounds(rho, three_qubit_part(), kT2, {0.75, 1.0, 1.0},
                                            Mode::monogamy, no_flag),
                    std::invalid_argument);

    bounds::EvaluationOptions flagged = no_flag;
    flagged.allow_mixed_lhs = true;
    flagged.roof.restarts = 8;
    const auto rep = bounds::evaluate_bounds(rho, three_qubit_part(), kT2, {0.75, 1.0, 1.0},
                                             Mode::monogamy, flagged);
    // Roof LHS cannot exceed the ensemble average of the two components.
    states::PartitionSpec part = three_qubit_part();
    const double avg = 0.6 * measures::pure_state_ue(a, part, kT2) +
                       0.4 * measures::pure_state_ue(b, part, kT2);
    CHECK(rep.lhs_measure <= avg + 1e-9);
    CHECK(rep.lhs_measure >= 0.0);
}
