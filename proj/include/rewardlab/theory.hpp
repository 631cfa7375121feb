#pragma once

// Numeric evaluation of the closed-form hitting-time bounds and the
// never-recovers prediction, so simulations can be tested against them.
// All internal arithmetic is long double (80-bit on x86-64): the helper
// gamma = (pi0(star)/M)^(14/13) underflows double for very small
// pi0(star), which is exactly the regime of interest.

#include <optional>
#include <utility>

#include "rewardlab/scenarios.hpp"

namespace rewardlab {

// Thrown when a calculator is applied to a scenario that fails the
// hypotheses of the corresponding result; carries the full report.
class assumption_failure : public std::runtime_error {
public:
    explicit assumption_failure(assumption_report rep);
    const assumption_report report;
};

struct bound_report {
    bound_kind kind{};
    // stall bound for the run that keeps the mediocre reward
    std::optional<double> lower_bound_t_star;
    // direct-convergence bound for the run that keeps the mediocre reward
    // (positive-similarity case)
    std::optional<double> upper_bound_t_star;
    // bound for the run whose reward demotes the mediocre output
    std::optional<double> upper_bound_t_nomed;
    // pi(star) >= this at any time past upper_bound_t_nomed
    std::optional<double> terminal_prob_lower;
    // positive-similarity: whether the similarity exceeds the demoted-run
    // suppression threshold; if so v_truth stays below v_truth_ceiling
    std::optional<bool> similarity_condition;
    std::optional<double> v_truth_ceiling;
    // predicted pi0(star) exponent of the stall/convergence time
    double exponent = 0.0;
    // |A(star; theta0)| < 1e-6 makes the K constant degenerate
    bool a_star_near_zero = false;
    std::vector<std::pair<std::string, double>> constants;

    double constant(const std::string& name) const;
};

// Orthonormal-features stall bounds. epsilon must lie in (0, delta1);
// refuses with the assumption report when the hypotheses fail.
bound_report stall_bounds_orthonormal(const scenario& sc, double epsilon);

// <phi(star), phi(med)> < 0 variant; steeper exponent -14/13 - alpha.
bound_report stall_bounds_negative_similarity(const scenario& sc, double epsilon);

// <phi(star), phi(med)> > 0 variant: upper bound on the direct run and
// the suppression ceiling for the demoted run.
bound_report convergence_bounds_positive_similarity(const scenario& sc, double epsilon);

// The similarity level the demoted run must exceed for the suppression
// ceiling to apply: a weighted average of the squared star and mediocre
// feature norms with weights pi0(star) A(star) and -pi0(med) A(med)
// under the demoted reward. Purely diagnostic; no hypotheses checked.
double positive_similarity_suppression_threshold(const scenario& sc);

// Initial-probability budget under which two flows whose rewards differ
// only on a set Z stay within epsilon in TV over [0, horizon]:
// 2 * epsilon / (delta_z * exp(10 b^2 horizon)). delta_z = 0 means the
// rewards agree everywhere; returns +infinity.
double low_probability_tv_threshold(double b, double delta_z, double epsilon, double horizon);

// 2 B (delta1 + delta2) (1 - pi(med)), an upper bound on the gradient
// norm at the given policy state.
double gradient_norm_bound(const scenario& sc, const dvec& probs);

struct failure_check_result {
    assumption_report report;
    double zeta = 0.0;
    double scale_c = 0.0;
    double scale_threshold = 0.0;
    bool all_conditions = false;
    // when all conditions hold, v_truth stays below this forever
    std::optional<double> v_truth_ceiling;
};

// Conditions and prediction of the never-recovers construction
// (theta0 = C * (phi(bad) - phi(star)), negative similarity).
failure_check_result negative_similarity_failure_check(const scenario& sc);

}  // namespace rewardlab
