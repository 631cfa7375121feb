#pragma once

// Independent binary128 re-evaluations of the closed-form bounds, used
// to guard the long-double calculators against transcription errors.
// Everything is computed from raw scenario quantities, not from the
// calculators' intermediate constants.

#include <quadmath.h>

#include "rewardlab/types.hpp"

namespace rewardlab::testing::quad {

using f128 = __float128;

inline f128 q(double x) { return static_cast<f128>(x); }

inline f128 expected_value(const dvec& probs, const dvec& rewards) {
    f128 v = 0;
    for (size_t i = 0; i < probs.size(); ++i) v += q(probs[i]) * q(rewards[i]);
    return v;
}

inline double stall_lower_orthonormal(double r_med, double delta1, double delta2, double eps,
                                      double pi_star) {
    const f128 sum = q(delta1) + q(delta2);
    f128 m = q(0.05) * powq(q(r_med), q(2) / q(7)) / sum;
    if (m > 1) m = 1;
    f128 lb = 2 * sqrtq(q(2)) * powq(m, q(14) / q(13)) * q(delta1) * q(r_med);
    lb *= 1 - expq(-sqrtq(q(2)) * (q(delta1) - q(eps)));
    lb /= sum * (1 + 8 * q(delta1));
    lb *= powq(q(pi_star), -q(14) / q(13));
    return static_cast<double>(lb);
}

inline double demoted_upper(double r_star_truth, double eps, const dvec& probs, const dvec& demoted,
                            int star, double star_norm_sq, double pi_star) {
    const f128 adv = q(demoted[static_cast<size_t>(star)]) - expected_value(probs, demoted);
    f128 ub = (q(r_star_truth) + 1) * (q(r_star_truth) + 1);
    ub /= q(eps) * q(eps) * adv * q(star_norm_sq);
    ub /= q(pi_star);
    return static_cast<double>(ub);
}

inline double stall_lower_negative(double r_med, double delta1, double delta2, double eps, double pi_star,
                                   double pi_med, double s, double med_norm_sq, double star_norm_sq,
                                   double big_b, double a_star) {
    const f128 sum = q(delta1) + q(delta2);
    const f128 b2 = q(big_b) * q(big_b);
    f128 m = q(med_norm_sq) * powq(q(r_med), q(2) / q(7)) / (40 * b2 * sum);
    if (m > 1) m = 1;
    const f128 alpha = -q(s) / (26 * (q(med_norm_sq) - q(s) / 2));
    const f128 c = powq(26 / (q(r_med) * q(r_med)), 13 * alpha / 7);
    const f128 k =
        c * (1 + q(med_norm_sq) * q(pi_med) * q(pi_med) / (8 * (q(star_norm_sq) - q(s)) * q(a_star)));
    f128 lb = q(r_med) * powq(m, q(14) / q(13) + alpha) * (1 - expq(-2 * (q(delta1) - q(eps))));
    lb /= 4 * b2 * sum * k;
    lb *= powq(q(pi_star), -q(14) / q(13) - alpha);
    return static_cast<double>(lb);
}

inline double direct_upper_positive(double r_star, double eps, double delta1, double diff_norm_sq,
                                    double pi_star) {
    f128 ub = (q(r_star) + 1) * (q(r_star) + 1);
    ub /= q(eps) * q(eps) * q(delta1) * q(diff_norm_sq);
    ub /= q(pi_star);
    return static_cast<double>(ub);
}

inline double low_probability_budget(double big_b, double delta_z, double eps, double horizon) {
    return static_cast<double>(2 * q(eps) / (q(delta_z) * expq(10 * q(big_b) * q(big_b) * q(horizon))));
}

}  // namespace rewardlab::testing::quad
