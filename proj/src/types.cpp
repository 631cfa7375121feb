#include "rewardlab/types.hpp"

#include <algorithm>
#include <cmath>

namespace rewardlab {

double feature_set::norm(int i) const {
    double s = 0.0;
    for (double x : vectors[static_cast<size_t>(i)]) s += x * x;
    return std::sqrt(s);
}

double feature_set::inner(int i, int j) const {
    const dvec& a = vectors[static_cast<size_t>(i)];
    const dvec& b = vectors[static_cast<size_t>(j)];
    double s = 0.0;
    for (int d = 0; d < dim; ++d) s += a[static_cast<size_t>(d)] * b[static_cast<size_t>(d)];
    return s;
}

double feature_set::max_norm() const {
    double best = 0.0;
    for (int i = 0; i < count(); ++i) best = std::max(best, norm(i));
    return best;
}

feature_set make_feature_set(int dim, std::vector<dvec> vectors) {
    if (dim < 1) throw std::invalid_argument("feature dim must be >= 1");
    if (vectors.size() < 2) throw std::invalid_argument("need at least 2 outputs");
    for (size_t i = 0; i < vectors.size(); ++i) {
        if (static_cast<int>(vectors[i].size()) != dim)
            throw std::invalid_argument("feature vector " + std::to_string(i) + " has wrong length");
        double s = 0.0;
        for (double x : vectors[i]) {
            if (!std::isfinite(x)) throw std::invalid_argument("feature vector " + std::to_string(i) + " has a non-finite entry");
            s += x * x;
        }
        if (s == 0.0) throw std::invalid_argument("feature vector " + std::to_string(i) + " is zero");
    }
    feature_set fs;
    fs.dim = dim;
    fs.vectors = std::move(vectors);
    return fs;
}

reward_table make_reward_table(dvec proxy, dvec ground_truth) {
    if (proxy.size() != ground_truth.size())
        throw std::invalid_argument("proxy and ground-truth reward vectors differ in length");
    for (const dvec* r : {&proxy, &ground_truth}) {
        for (double x : *r) {
            if (!std::isfinite(x) || x < -1.0 || x > 1.0)
                throw std::invalid_argument("reward value " + std::to_string(x) + " outside [-1, 1]");
        }
    }
    return reward_table{std::move(proxy), std::move(ground_truth)};
}

structured_reward_spec structured_reward_spec::from_rewards(const dvec& rewards) {
    if (rewards.size() < 3) throw std::invalid_argument("structured rewards need at least 3 outputs");
    const int n = static_cast<int>(rewards.size());
    int star = 0;
    for (int i = 1; i < n; ++i)
        if (rewards[static_cast<size_t>(i)] > rewards[static_cast<size_t>(star)]) star = i;
    for (int i = 0; i < n; ++i)
        if (i != star && rewards[static_cast<size_t>(i)] == rewards[static_cast<size_t>(star)])
            throw std::invalid_argument("reward maximizer is not unique; ties are rejected");
    int med = star == 0 ? 1 : 0;
    for (int i = 0; i < n; ++i)
        if (i != star && rewards[static_cast<size_t>(i)] > rewards[static_cast<size_t>(med)]) med = i;

    structured_reward_spec spec;
    spec.star_index = star;
    spec.med_index = med;
    for (int i = 0; i < n; ++i)
        if (i != star && i != med) spec.bad_indices.push_back(i);
    if (spec.bad_indices.empty()) throw std::invalid_argument("no bad outputs; need star/med/bad decomposition");

    const double r_star = rewards[static_cast<size_t>(star)];
    const double r_med = rewards[static_cast<size_t>(med)];
    const double r_bad = rewards[static_cast<size_t>(spec.bad_indices[0])];
    for (int b : spec.bad_indices)
        if (rewards[static_cast<size_t>(b)] != r_bad)
            throw std::invalid_argument("bad outputs must share a single reward value");
    if (!(r_med > 0.0)) throw std::invalid_argument("mediocre reward must be positive");
    if (!(r_bad <= 0.0)) throw std::invalid_argument("bad reward must be <= 0");
    spec.delta1 = r_star - r_med;
    spec.delta2 = r_med - r_bad;
    if (!(spec.delta1 > 0.0) || !(spec.delta2 > 0.0))
        throw std::invalid_argument("reward gaps must be strictly positive");
    return spec;
}

void structured_reward_spec::validate_against(const dvec& rewards) const {
    structured_reward_spec derived = from_rewards(rewards);
    if (derived.star_index != star_index || derived.med_index != med_index ||
        derived.bad_indices != bad_indices ||
        std::abs(derived.delta1 - delta1) > 1e-12 || std::abs(derived.delta2 - delta2) > 1e-12)
        throw std::invalid_argument("structured reward spec does not match the reward vector");
}

}  // namespace rewardlab
