#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace rewardlab {

using dvec = std::vector<double>;

// Feature vectors of a finite output set, one row per output.
// Every vector must be nonzero; n >= 2, dim >= 1.
struct feature_set {
    int dim = 0;
    std::vector<dvec> vectors;

    int count() const { return static_cast<int>(vectors.size()); }

    double norm(int i) const;
    double inner(int i, int j) const;
    // B: largest feature norm over all outputs.
    double max_norm() const;
};

feature_set make_feature_set(int dim, std::vector<dvec> vectors);

// A pair of reward assignments over the same output set, entries in [-1, 1].
struct reward_table {
    dvec proxy;
    dvec ground_truth;
};

reward_table make_reward_table(dvec proxy, dvec ground_truth);

struct policy_params {
    dvec theta;
};

// Decomposition of an output set into a unique best output, a single
// mediocre output, and a block of equally-rewarded bad outputs with
// r(star) > r(med) > 0 >= r(bad).
struct structured_reward_spec {
    int star_index = -1;
    int med_index = -1;
    std::vector<int> bad_indices;
    double delta1 = 0.0;  // r(star) - r(med)
    double delta2 = 0.0;  // r(med) - r(bad)

    // Derives the decomposition from a reward vector. Throws if the
    // maximizer is not unique, the mediocre tier is not a single output,
    // bad rewards are not all equal, or the sign pattern fails.
    static structured_reward_spec from_rewards(const dvec& rewards);

    void validate_against(const dvec& rewards) const;
};

inline void check_probability_vector(const dvec& p, double tol = 1e-9) {
    double sum = 0.0;
    for (double x : p) {
        if (!(x >= 0.0)) throw std::invalid_argument("probability vector has a negative or NaN entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("probability vector sums to " + std::to_string(sum) + ", expected 1");
}

}  // namespace rewardlab
