#include <doctest.h>

#include <cmath>
#include <random>

#include "rewardlab/core.hpp"
#include "test_helpers.hpp"

using namespace rewardlab;
using namespace rewardlab::testing;

TEST_CASE("softmax of zero parameters is uniform") {
    std::mt19937_64 rng(1);
    const feature_set fs = random_features(rng, 6, 4);
    const dvec p = softmax_probs(fs, policy_params{dvec(4, 0.0)});
    for (double x : p) CHECK(x == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("standard-basis logits set probabilities directly") {
    const feature_set fs = standard_basis_features(5);
    const dvec target = {0.05, 0.5, 0.15, 0.15, 0.15};
    dvec theta(5);
    for (size_t i = 0; i < 5; ++i) theta[i] = std::log(target[i]);
    const dvec p = softmax_probs(fs, policy_params{theta});
    for (size_t i = 0; i < 5; ++i) CHECK(std::abs(p[i] - target[i]) < 1e-12);
}

TEST_CASE("softmax matches an extended-precision evaluation") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const feature_set fs = random_features(rng, 4, 3, 2.0);
        const dvec theta = random_vector(rng, 3, 3.0);
        const dvec p = softmax_probs(fs, policy_params{theta});

        long double z = 0.0L;
        std::vector<long double> e(4);
        for (int y = 0; y < 4; ++y) {
            long double logit = 0.0L;
            for (int d = 0; d < 3; ++d)
                logit += static_cast<long double>(fs.vectors[y][d]) * static_cast<long double>(theta[d]);
            e[y] = std::exp(logit);
            z += e[y];
        }
        for (int y = 0; y < 4; ++y)
            CHECK(std::abs(p[y] - static_cast<double>(e[y] / z)) < 1e-12);
    }
}

TEST_CASE("softmax sums to one for large logits") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uniform(-500.0, 500.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        dvec logits(static_cast<size_t>(n));
        for (double& l : logits) l = uniform(rng);
        const dvec p = softmax_from_logits(logits);
        double sum = 0.0;
        for (double x : p) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("expected reward on hand-checked inputs") {
    const dvec rewards = {1.0, 0.8, -1.0, -1.0, -1.0};
    CHECK(expected_reward(dvec(5, 0.2), rewards) == doctest::Approx(-0.24).epsilon(1e-12));
    CHECK(expected_reward({1.0, 0.0, 0.0, 0.0, 0.0}, rewards) == 1.0);
    CHECK(std::abs(expected_reward({0.05, 0.5, 0.15, 0.15, 0.15}, rewards)) < 1e-15);
    CHECK_THROWS_AS(expected_reward({0.5, 0.5}, rewards), std::invalid_argument);
}

TEST_CASE("probability-weighted advantages sum to zero") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const dvec p = random_unit_simplex(rng, n);
        const dvec r = random_rewards(rng, n);
        double weighted = 0.0;
        for (int y = 0; y < n; ++y) weighted += p[y] * advantage(p, r, y);
        CHECK(std::abs(weighted) < 1e-12);
    }
}

TEST_CASE("advantage hand cases") {
    const dvec rewards = {1.0, 0.8, -1.0, -1.0, -1.0};
    const dvec p = {0.05, 0.5, 0.15, 0.15, 0.15};
    CHECK(advantage(p, rewards, 1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(advantage({0.0, 1.0, 0.0, 0.0, 0.0}, rewards, 1) == 0.0);
    CHECK_THROWS_AS(advantage(p, rewards, 5), std::out_of_range);
}

TEST_CASE("reward variance") {
    CHECK(reward_variance({0.0, 1.0}, {0.3, -0.2}) == 0.0);
    CHECK(reward_variance({0.5, 0.5}, {1.0, -1.0}) == doctest::Approx(1.0).epsilon(1e-12));

    // two-pass evaluation E[r^2] - V^2 as an independent route
    const dvec p = {0.05, 0.5, 0.15, 0.15, 0.15};
    const dvec r = {1.0, 0.8, -1.0, -1.0, -1.0};
    double second = 0.0;
    for (size_t i = 0; i < p.size(); ++i) second += p[i] * r[i] * r[i];
    const double v = expected_reward(p, r);
    CHECK(reward_variance(p, r) == doctest::Approx(second - v * v).epsilon(1e-12));
}

TEST_CASE("total variation distance") {
    CHECK(tv_distance({0.3, 0.7}, {0.3, 0.7}) == 0.0);
    CHECK(tv_distance({1.0, 0.0}, {0.0, 1.0}) == 1.0);
    CHECK(tv_distance({0.6, 0.4}, {0.5, 0.5}) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(tv_distance({1.0}, {0.5, 0.5}), std::invalid_argument);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const dvec p = random_unit_simplex(rng, n);
        const dvec q = random_unit_simplex(rng, n);
        const double d = tv_distance(p, q);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0 + 1e-15);
        CHECK(d == tv_distance(q, p));
    }
}

TEST_CASE("initial parameters from standard basis targets are the logs") {
    const feature_set fs = standard_basis_features(5);
    const dvec target = {0.05, 0.5, 0.15, 0.15, 0.15};
    const policy_params params = solve_initial_params(fs, target);
    for (size_t i = 0; i < 5; ++i)
        CHECK(params.theta[i] == doctest::Approx(std::log(target[i])).epsilon(1e-12));
}

TEST_CASE("initial parameters for uniform targets give equal logits") {
    std::mt19937_64 rng(6);
    const feature_set fs = random_features(rng, 4, 4);
    const dvec target(4, 0.25);
    const policy_params params = solve_initial_params(fs, target);
    const dvec p = softmax_probs(fs, params);
    for (double x : p) CHECK(x == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("initial parameters round-trip for a non-orthogonal geometry") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const feature_set fs = make_feature_set(5, {{1.5, 0.0, 0.0, 0.0, 0.0},
                                                {-inv_sqrt2, inv_sqrt2, 0.0, 0.0, 0.0},
                                                {0.0, 0.0, 1.0, 0.0, 0.0},
                                                {0.0, 0.0, 0.0, 1.0, 0.0},
                                                {0.0, 0.0, 0.0, 0.0, 1.0}});
    const dvec target = {0.05, 0.5, 0.15, 0.15, 0.15};
    const dvec p = softmax_probs(fs, solve_initial_params(fs, target));
    for (size_t i = 0; i < 5; ++i) CHECK(std::abs(p[i] - target[i]) < 1e-9);
}

TEST_CASE("initial-parameter solve round-trips on random solvable systems") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const int dim = n + static_cast<int>(rng() % 3);
        const feature_set fs = random_features(rng, n, dim);
        const dvec target = random_unit_simplex(rng, n);
        const dvec p = softmax_probs(fs, solve_initial_params(fs, target));
        for (int y = 0; y < n; ++y) CHECK(std::abs(p[y] - target[y]) < 1e-9);
    }
}

TEST_CASE("initial-parameter solve rejects inconsistent systems") {
    // two outputs share a feature vector but ask for different probabilities
    const feature_set fs = make_feature_set(2, {{1.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_WITH_AS(solve_initial_params(fs, {0.7, 0.3}), doctest::Contains("residual"),
                         std::runtime_error);
}

TEST_CASE("expected reward is invariant to uniform logit shifts") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4;
        const feature_set fs = random_features(rng, n, n);
        // direction with equal inner product against every feature vector
        const policy_params shift = solve_initial_params(fs, dvec(n, 1.0 / n));
        const dvec theta = random_vector(rng, n);
        const dvec r = random_rewards(rng, n);
        const double v0 = expected_reward(softmax_probs(fs, policy_params{theta}), r);
        for (double c : {-3.0, 0.5, 10.0}) {
            dvec shifted = theta;
            for (int d = 0; d < n; ++d) shifted[d] += c * shift.theta[d];
            const double v = expected_reward(softmax_probs(fs, policy_params{shifted}), r);
            CHECK(std::abs(v - v0) < 1e-9);
        }
    }
}

TEST_CASE("TV and expected reward are Lipschitz in the parameters") {
    std::mt19937_64 rng(9);
    const int n = 5, dim = 4;
    const feature_set fs = random_features(rng, n, dim);
    const double big_b = fs.max_norm();
    for (int trial = 0; trial < 1000; ++trial) {
        const dvec theta1 = random_vector(rng, dim, 2.0);
        const dvec theta2 = random_vector(rng, dim, 2.0);
        double dist = 0.0;
        for (int d = 0; d < dim; ++d) dist += (theta1[d] - theta2[d]) * (theta1[d] - theta2[d]);
        dist = std::sqrt(dist);
        const dvec p1 = softmax_probs(fs, policy_params{theta1});
        const dvec p2 = softmax_probs(fs, policy_params{theta2});
        CHECK(tv_distance(p1, p2) <= big_b * dist + 1e-12);
        const dvec r = random_rewards(rng, n);
        CHECK(std::abs(expected_reward(p1, r) - expected_reward(p2, r)) <= big_b * dist + 1e-12);
    }
}

TEST_CASE("reward table construction validates the range") {
    CHECK_THROWS_AS(make_reward_table({1.2, 0.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_reward_table({0.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("feature set construction validates shape") {
    CHECK_THROWS_AS(make_feature_set(2, {{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_feature_set(2, {{1.0, 0.0}, {0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_feature_set(2, {{1.0, 0.0}, {1.0}}), std::invalid_argument);
}

TEST_CASE("structured reward decomposition") {
    const structured_reward_spec spec = structured_reward_spec::from_rewards({1.0, 0.8, -1.0, -1.0, -1.0});
    CHECK(spec.star_index == 0);
    CHECK(spec.med_index == 1);
    CHECK(spec.bad_indices == std::vector<int>{2, 3, 4});
    CHECK(spec.delta1 == doctest::Approx(0.2));
    CHECK(spec.delta2 == doctest::Approx(1.8));

    // ties at the top are rejected rather than broken arbitrarily
    CHECK_THROWS_AS(structured_reward_spec::from_rewards({1.0, 1.0, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(structured_reward_spec::from_rewards({1.0, 0.8, -1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(structured_reward_spec::from_rewards({1.0, -0.1, -1.0}), std::invalid_argument);
}
