#pragma once

// Brute-force enumeration oracle for the ranking-accuracy variants,
// written independently of the library path: direct exponentials in long
// double instead of log-domain normalization, explicit per-example
// loops. Only safe for small datasets with moderate log-probabilities.

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "rewardlab/metrics.hpp"

namespace rewardlab::testing {

inline bool oracle_indicator(const preference_example& ex, const double* v_bar) {
    double threshold = ex.preferred.proxy_score;
    if (v_bar && *v_bar > threshold) threshold = *v_bar;
    for (const output_record& rec : ex.dispreferred)
        if (!(rec.proxy_score < threshold)) return false;
    return true;
}

inline long double oracle_weight_unnormalized(const preference_example& ex) {
    long double w = std::exp(static_cast<long double>(ex.preferred.log_prob) /
                             static_cast<long double>(ex.preferred.length));
    for (const output_record& rec : ex.dispreferred)
        w *= std::exp(static_cast<long double>(rec.log_prob) / static_cast<long double>(rec.length));
    return w;
}

struct oracle_metrics {
    double acc, acc_w, hacc, hacc_w;
};

inline oracle_metrics oracle_all(const preference_dataset& dataset,
                                 const std::vector<value_estimate>& values) {
    std::map<std::string, double> v_bar;
    for (const value_estimate& v : values) v_bar[v.example_id] = v.v_bar;

    long double plain = 0, aware = 0, z = 0, plain_w = 0, aware_w = 0;
    for (const preference_example& ex : dataset) {
        const double vb = v_bar.at(ex.example_id);
        const bool ind_plain = oracle_indicator(ex, nullptr);
        const bool ind_aware = oracle_indicator(ex, &vb);
        const long double w = oracle_weight_unnormalized(ex);
        plain += ind_plain ? 1 : 0;
        aware += ind_aware ? 1 : 0;
        z += w;
        if (ind_plain) plain_w += w;
        if (ind_aware) aware_w += w;
    }
    const long double n = static_cast<long double>(dataset.size());
    return {static_cast<double>(plain / n), static_cast<double>(plain_w / z),
            static_cast<double>(aware / n), static_cast<double>(aware_w / z)};
}

inline preference_dataset random_dataset(std::mt19937_64& rng, int max_examples, int max_k) {
    std::uniform_real_distribution<double> score(-1.0, 1.0);
    std::uniform_real_distribution<double> logp(-5.0, 0.0);
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_examples));
    preference_dataset dataset;
    for (int i = 0; i < n; ++i) {
        preference_example ex;
        ex.example_id = "ex" + std::to_string(i);
        const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_k));
        double max_truth = -2.0;
        for (int j = 0; j < k; ++j) {
            output_record rec;
            rec.proxy_score = score(rng);
            rec.truth_score = score(rng);
            rec.length = 1 + static_cast<long long>(rng() % 50);
            rec.log_prob = logp(rng);
            max_truth = std::max(max_truth, rec.truth_score);
            ex.dispreferred.push_back(rec);
        }
        ex.preferred.proxy_score = score(rng);
        ex.preferred.truth_score = max_truth + 0.05;  // label precondition
        ex.preferred.length = 1 + static_cast<long long>(rng() % 50);
        ex.preferred.log_prob = logp(rng);
        dataset.push_back(std::move(ex));
    }
    return dataset;
}

inline std::vector<value_estimate> random_values(std::mt19937_64& rng, const preference_dataset& dataset) {
    std::uniform_real_distribution<double> score(-1.0, 1.0);
    std::vector<value_estimate> values;
    for (const preference_example& ex : dataset)
        values.push_back(value_estimate{ex.example_id, score(rng), 10});
    return values;
}

}  // namespace rewardlab::testing
