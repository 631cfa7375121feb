#pragma once

// Ranking-accuracy variants over preference datasets, the sampled
// expected-proxy-reward estimate, and the comparison statistics used to
// rank metrics against each other. The module is oblivious to how
// scores and log-probabilities were produced.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "rewardlab/rng.hpp"
#include "rewardlab/types.hpp"

namespace rewardlab {

struct output_record {
    double proxy_score = 0.0;
    double truth_score = 0.0;  // used only to validate the preference label
    long long length = 1;
    double log_prob = 0.0;
};

struct preference_example {
    std::string example_id;
    output_record preferred;
    std::vector<output_record> dispreferred;  // K >= 1
};

using preference_dataset = std::vector<preference_example>;

struct value_estimate {
    std::string example_id;
    double v_bar = 0.0;  // may be -infinity (reduces the harm-aware metric to the plain one)
    long long n_samples = 1;
};

inline constexpr long long default_value_samples = 10;

// Validates lengths, log-probs and the label precondition
// truth(preferred) > max_k truth(dispreferred_k); throws naming the
// offending example.
void validate_dataset(const preference_dataset& dataset);

// Fraction of examples with max_k proxy(dispreferred_k) < proxy(preferred);
// ties count as incorrect.
double acc(const preference_dataset& dataset);

// Like acc, but an example also counts as correct when every dispreferred
// proxy score falls strictly below max{proxy(preferred), v_bar}.
double hacc(const preference_dataset& dataset, const std::vector<value_estimate>& values);

// Probability-weighted variants: example i is weighted by
// exp(sum over its outputs of log_prob / length), normalized over the
// dataset in log domain. harm_aware selects the hacc indicator (then
// values must be non-null).
double weighted_variant(const preference_dataset& dataset, const std::vector<value_estimate>* values,
                        bool harm_aware);

// Mean proxy score of n_samples seeded draws from the sampler.
value_estimate estimate_value(const std::string& example_id,
                              const std::function<double(rng_stream&)>& sampler, long long n_samples,
                              std::uint64_t seed);

// Rank correlation with average ranks for ties; a constant input vector
// has no defined rank correlation and is an error.
double spearman(const dvec& xs, const dvec& ys);

// 100 * (max - chosen) / max over reward increases; requires max > 0.
double regret(const dvec& reward_increases, int chosen_index);

// Strict line-based file formats; see README for the exact columns.
preference_dataset read_dataset_file(const std::string& path);
void write_dataset_file(const preference_dataset& dataset, const std::string& path);
std::vector<value_estimate> read_values_file(const std::string& path);
void write_values_file(const std::vector<value_estimate>& values, const std::string& path);

struct metrics_summary {
    double acc = 0.0;
    double acc_w = 0.0;
    double hacc = 0.0;
    double hacc_w = 0.0;
    long long n_examples = 0;
};

metrics_summary compute_all_metrics(const preference_dataset& dataset,
                                    const std::vector<value_estimate>& values);

}  // namespace rewardlab
