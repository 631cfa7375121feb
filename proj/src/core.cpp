#include "rewardlab/core.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <cstdio>

#include "rewardlab/kernels.hpp"

namespace rewardlab {

namespace {

void warn_extreme_logits(const dvec& logits) {
    static std::atomic<bool> warned{false};
    for (double l : logits) {
        if (std::abs(l) > 700.0) {
            if (!warned.exchange(true))
                std::fprintf(stderr, "rewardlab: warning: |logit| exceeded 700, probabilities near machine zero\n");
            return;
        }
    }
}

}  // namespace

dvec softmax_from_logits(dvec logits) {
    if (logits.empty()) throw std::invalid_argument("softmax of empty logit vector");
    warn_extreme_logits(logits);
    kernels::softmax_in_place(logits);
    return logits;
}

dvec softmax_probs(const feature_set& fs, const policy_params& params) {
    if (static_cast<int>(params.theta.size()) != fs.dim)
        throw std::invalid_argument("theta length " + std::to_string(params.theta.size()) +
                                    " does not match feature dim " + std::to_string(fs.dim));
    dvec logits;
    kernels::logits(fs, params.theta, logits);
    return softmax_from_logits(std::move(logits));
}

double expected_reward(const dvec& probs, const dvec& rewards) {
    if (probs.size() != rewards.size())
        throw std::invalid_argument("probability and reward vectors differ in length");
    return kernels::dot(probs, rewards);
}

double advantage(const dvec& probs, const dvec& rewards, int output_index) {
    if (output_index < 0 || output_index >= static_cast<int>(probs.size()))
        throw std::out_of_range("output index " + std::to_string(output_index) + " out of range");
    return rewards[static_cast<size_t>(output_index)] - expected_reward(probs, rewards);
}

double reward_variance(const dvec& probs, const dvec& rewards) {
    const double v = expected_reward(probs, rewards);
    return kernels::centered_second_moment(probs, rewards, v);
}

double tv_distance(const dvec& p, const dvec& q) {
    if (p.size() != q.size()) throw std::invalid_argument("distributions differ in length");
    return kernels::half_l1_distance(p, q);
}

policy_params solve_initial_params(const feature_set& fs, const dvec& target_probs) {
    const int n = fs.count();
    if (static_cast<int>(target_probs.size()) != n)
        throw std::invalid_argument("target probability count does not match output count");
    check_probability_vector(target_probs);
    for (double p : target_probs)
        if (!(p > 0.0)) throw std::invalid_argument("target probabilities must be strictly positive");

    Eigen::MatrixXd phi(n, fs.dim);
    Eigen::VectorXd log_p(n);
    for (int y = 0; y < n; ++y) {
        log_p(y) = std::log(target_probs[static_cast<size_t>(y)]);
        for (int d = 0; d < fs.dim; ++d) phi(y, d) = fs.vectors[static_cast<size_t>(y)][static_cast<size_t>(d)];
    }

    Eigen::VectorXd theta = phi.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(log_p);
    const double residual = (phi * theta - log_p).norm();
    const double scale = log_p.norm();
    if (residual > 1e-9 * scale)
        throw std::runtime_error("initial-parameter solve failed: residual norm " + std::to_string(residual) +
                                 " exceeds 1e-9 * " + std::to_string(scale));

    policy_params params;
    params.theta.assign(theta.data(), theta.data() + fs.dim);
    return params;
}

}  // namespace rewardlab
