#pragma once

// Shared random instance generators for the test suites. Randomness here
// only needs to be deterministic on the machine running the tests.

#include <random>

#include "rewardlab/types.hpp"

namespace rewardlab::testing {

inline dvec random_unit_simplex(std::mt19937_64& rng, int n) {
    std::exponential_distribution<double> expo(1.0);
    dvec p(static_cast<size_t>(n));
    double sum = 0.0;
    for (double& x : p) {
        x = expo(rng) + 1e-6;
        sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
}

inline dvec random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    dvec v(static_cast<size_t>(n));
    for (double& x : v) x = normal(rng);
    return v;
}

inline feature_set random_features(std::mt19937_64& rng, int n, int dim, double scale = 1.0) {
    std::vector<dvec> vectors;
    vectors.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        dvec v = random_vector(rng, dim, scale);
        double norm_sq = 0.0;
        for (double x : v) norm_sq += x * x;
        if (norm_sq == 0.0) v[0] = 1.0;
        vectors.push_back(std::move(v));
    }
    return make_feature_set(dim, std::move(vectors));
}

inline dvec random_rewards(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    dvec r(static_cast<size_t>(n));
    for (double& x : r) x = uniform(rng);
    return r;
}

inline feature_set standard_basis_features(int n) {
    std::vector<dvec> vectors(static_cast<size_t>(n), dvec(static_cast<size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) vectors[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    return make_feature_set(n, std::move(vectors));
}

}  // namespace rewardlab::testing
