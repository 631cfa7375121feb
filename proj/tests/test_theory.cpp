#include <doctest.h>

#include <cmath>
#include <random>

#include "rewardlab/core.hpp"
#include "rewardlab/dynamics.hpp"
#include "rewardlab/theory.hpp"
#include "discovery.hpp"
#include "oracle_quad.hpp"
#include "test_helpers.hpp"

using namespace rewardlab;
using namespace rewardlab::testing;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

TEST_CASE("orthonormal stall bounds match an independent binary128 evaluation") {
    const scenario sc = discover_orthonormal_config(0.5, true);
    const double eps = 0.1;  // delta1 / 2
    const bound_report report = stall_bounds_orthonormal(sc, eps);

    const double pi_star = sc.initial_probs[0];
    const double lb = quad::stall_lower_orthonormal(0.8, 0.2, 1.8, eps, pi_star);
    REQUIRE(report.lower_bound_t_star.has_value());
    CHECK(rel_diff(*report.lower_bound_t_star, lb) < 1e-10);

    REQUIRE(report.upper_bound_t_nomed.has_value());
    const double ub = quad::demoted_upper(1.0, eps, sc.initial_probs, sc.rewards.proxy, 0, 1.0, pi_star);
    CHECK(rel_diff(*report.upper_bound_t_nomed, ub) < 1e-10);

    REQUIRE(report.terminal_prob_lower.has_value());
    CHECK(*report.terminal_prob_lower == doctest::Approx(1.0 - eps / 2.0).epsilon(1e-12));
    CHECK(report.exponent == doctest::Approx(-14.0 / 13.0));
    CHECK(*report.lower_bound_t_star < *report.upper_bound_t_nomed);
}

TEST_CASE("halving the initial star probability scales the stall bound by 2^(14/13)") {
    const scenario sc_half = discover_orthonormal_config(0.25, true);
    const scenario sc_full = discover_orthonormal_config(0.5, true);
    const double eps = 0.1;
    const double lb_half = *stall_bounds_orthonormal(sc_half, eps).lower_bound_t_star;
    const double lb_full = *stall_bounds_orthonormal(sc_full, eps).lower_bound_t_star;
    CHECK(rel_diff(lb_half / lb_full, std::pow(2.0, 14.0 / 13.0)) < 1e-10);
}

TEST_CASE("stall bound vanishes as the tolerance approaches the reward gap") {
    const scenario sc = discover_orthonormal_config(0.5, true);
    const double lb_mid = *stall_bounds_orthonormal(sc, 0.1).lower_bound_t_star;
    const double lb_edge = *stall_bounds_orthonormal(sc, 0.2 * (1.0 - 1e-9)).lower_bound_t_star;
    CHECK(lb_edge > 0.0);
    CHECK(lb_edge < lb_mid * 1e-6);
    CHECK_THROWS_AS(stall_bounds_orthonormal(sc, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(stall_bounds_orthonormal(sc, 0.0), std::invalid_argument);
}

TEST_CASE("calculators refuse when the hypotheses fail") {
    const scenario sc = build_fig2_scenario(0.05, true);
    try {
        stall_bounds_orthonormal(sc, 0.1);
        FAIL("expected a refusal");
    } catch (const assumption_failure& e) {
        CHECK_FALSE(e.report.overall);
        CHECK(std::string(e.what()).find("pi0_star_cap") != std::string::npos);
    }
}

TEST_CASE("negative-similarity bounds match an independent binary128 evaluation") {
    const scenario sc = discover_negative_config(0.5);
    const double eps = 0.1;
    const bound_report report = stall_bounds_negative_similarity(sc, eps);

    const double s = sc.features.inner(0, 1);
    const double expected_alpha = -s / (26.0 * (1.0 - 0.5 * s));
    CHECK(rel_diff(report.constant("alpha"), expected_alpha) < 1e-12);
    CHECK(report.constant("alpha") > 0.0);
    CHECK(report.constant("alpha") <= 1.0 / 13.0);
    CHECK(report.exponent == doctest::Approx(-14.0 / 13.0 - expected_alpha).epsilon(1e-12));
    CHECK_FALSE(report.a_star_near_zero);

    const double a_star = 1.0 - expected_reward(sc.initial_probs, sc.rewards.ground_truth);
    const double lb = quad::stall_lower_negative(0.8, 0.2, 1.8, eps, sc.initial_probs[0],
                                                 sc.initial_probs[1], s, 1.0, 2.25, 1.5, a_star);
    REQUIRE(report.lower_bound_t_star.has_value());
    CHECK(rel_diff(*report.lower_bound_t_star, lb) < 1e-10);

    REQUIRE(report.upper_bound_t_nomed.has_value());
    const double ub =
        quad::demoted_upper(1.0, eps, sc.initial_probs, sc.rewards.proxy, 0, 2.25, sc.initial_probs[0]);
    CHECK(rel_diff(*report.upper_bound_t_nomed, ub) < 1e-10);
}

TEST_CASE("similarity exponent tends to the orthonormal one as the inner product vanishes") {
    scenario sc = build_geometry_scenario(geometry_kind::negative);
    const double s = -1e-9;
    const double along = s / 1.5;
    sc.features.vectors[1] = {along, std::sqrt(1.0 - along * along), 0.0, 0.0, 0.0};
    const assumption_report report = check_assumptions(sc, bound_kind::negative_similarity_stall);
    CHECK(std::abs(report.constant("alpha")) < 1e-9);
    CHECK(report.constant("h_s") == doctest::Approx(1.0 / 7.0).epsilon(1e-8));
}

TEST_CASE("positive-similarity bounds, regime, and suppression condition") {
    const scenario sc = discover_positive_config(0.5);
    const double eps = 0.1;
    const bound_report report = convergence_bounds_positive_similarity(sc, eps);

    // regime 1 < 1.06 < 2.25 < 100 holds by construction
    REQUIRE(report.upper_bound_t_star.has_value());
    double diff_sq = 0.0;
    for (int d = 0; d < 5; ++d) {
        const double diff = sc.features.vectors[0][d] - sc.features.vectors[1][d];
        diff_sq += diff * diff;
    }
    const double ub = quad::direct_upper_positive(1.0, eps, 0.2, diff_sq, sc.initial_probs[0]);
    CHECK(rel_diff(*report.upper_bound_t_star, ub) < 1e-10);
    CHECK(report.exponent == doctest::Approx(-1.0));

    REQUIRE(report.similarity_condition.has_value());
    const double threshold = positive_similarity_suppression_threshold(sc);
    CHECK(*report.similarity_condition == (sc.features.inner(0, 1) > threshold));
    CHECK(*report.similarity_condition);
    REQUIRE(report.v_truth_ceiling.has_value());
    CHECK(*report.v_truth_ceiling ==
          doctest::Approx(1.0 - 0.2 * sc.initial_probs[1]).epsilon(1e-12));
}

TEST_CASE("suppression condition flips as the similarity crosses the threshold") {
    scenario sc = discover_positive_config(0.5);
    const double threshold = positive_similarity_suppression_threshold(sc);
    for (double delta : {1e-3, -1e-3}) {
        const double s = threshold + delta;
        scenario moved = sc;
        const double along = s / 1.5;
        moved.features.vectors[1] = {along, std::sqrt(1.0 - along * along), 0.0, 0.0, 0.0};
        // the threshold depends on probabilities and norms only, not on s
        CHECK(positive_similarity_suppression_threshold(moved) == doctest::Approx(threshold).epsilon(1e-12));
        CHECK((moved.features.inner(0, 1) > positive_similarity_suppression_threshold(moved)) ==
              (delta > 0));
    }
}

TEST_CASE("positive-similarity calculator rejects out-of-regime geometry") {
    // s below ||phi(med)||^2 violates the regime
    scenario sc = discover_positive_config(0.5);
    const double s = 0.9;
    const double along = s / 1.5;
    sc.features.vectors[1] = {along, std::sqrt(1.0 - along * along), 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(convergence_bounds_positive_similarity(sc, 0.1), assumption_failure);
}

TEST_CASE("low-probability budget values") {
    const double budget = low_probability_tv_threshold(1.0, 2.0, 0.05, 1.0);
    CHECK(budget == doctest::Approx(2.2699965e-6).epsilon(1e-7));
    CHECK(rel_diff(budget, quad::low_probability_budget(1.0, 2.0, 0.05, 1.0)) < 1e-10);
    CHECK(low_probability_tv_threshold(1.0, 2.0, 0.05, 0.0) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(std::isinf(low_probability_tv_threshold(1.0, 0.0, 0.05, 1.0)));
    CHECK_THROWS_AS(low_probability_tv_threshold(1.0, -0.1, 0.05, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(low_probability_tv_threshold(0.0, 1.0, 0.05, 1.0), std::invalid_argument);
}

TEST_CASE("gradient norm bound arithmetic and empirical domination") {
    const scenario sc = build_fig2_scenario(0.05, false);
    dvec probs = {0.1, 0.5, 0.2, 0.1, 0.1};
    CHECK(gradient_norm_bound(sc, probs) == doctest::Approx(2.0).epsilon(1e-12));

    dvec at_med = {0.0, 1.0, 0.0, 0.0, 0.0};
    CHECK(gradient_norm_bound(sc, at_med) == doctest::Approx(0.0));

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        const dvec theta = random_vector(rng, 5, 2.0);
        const dvec p = softmax_probs(sc.features, policy_params{theta});
        const dvec grad = exact_gradient(sc.features, policy_params{theta}, sc.rewards.ground_truth);
        double norm = 0.0;
        for (double g : grad) norm += g * g;
        CHECK(std::sqrt(norm) <= gradient_norm_bound(sc, p) + 1e-12);
    }
}

TEST_CASE("never-recovers check confirms the prediction dynamically") {
    const scenario sc = build_failure_scenario(0.5, 0.5, 5.0);
    const failure_check_result result = negative_similarity_failure_check(sc);
    CHECK(result.all_conditions);
    REQUIRE(result.v_truth_ceiling.has_value());
    CHECK(*result.v_truth_ceiling == doctest::Approx(0.8));
    CHECK(result.zeta > 0.0);
    CHECK(result.scale_c == doctest::Approx(5.0));

    integrator_config cfg{integration_method::euler, 0.1, 100000, 100};
    const trajectory traj = run_flow(sc, reward_choice::ground_truth, cfg);
    double max_v = -1.0;
    for (double v : traj.v_truth) max_v = std::max(max_v, v);
    CHECK(max_v < 0.8);

    const failure_check_result weak = negative_similarity_failure_check(build_failure_scenario(0.5, 0.5, 0.1));
    CHECK_FALSE(weak.all_conditions);
    CHECK_FALSE(weak.v_truth_ceiling.has_value());
}
