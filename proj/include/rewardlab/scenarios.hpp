#pragma once

// Constructors for the reward-error categories and feature geometries,
// plus checkers for the formal assumptions behind the bound calculators.
// Categories are verified inequalities, not trust-the-caller tags: every
// builder re-checks the defining inequality and throws if it fails.

#include <optional>
#include <utility>

#include "rewardlab/scenario.hpp"

namespace rewardlab {

// Which result's hypotheses to check / bounds to compute.
//   orthonormal_stall           - orthonormal features; stall lower bound and
//                                 direct-ascent upper bound
//   negative_similarity_stall   - <phi(star), phi(med)> < 0 variant
//   positive_similarity         - <phi(star), phi(med)> > 0 variant
//   negative_similarity_failure - the never-recovers construction with
//                                 theta0 along phi(bad) - phi(star)
enum class bound_kind {
    orthonormal_stall,
    negative_similarity_stall,
    positive_similarity,
    negative_similarity_failure,
};

std::string to_string(bound_kind kind);
bound_kind bound_kind_from_string(const std::string& s);

// One inequality of an assumption: lhs < rhs (strict) or lhs <= rhs.
struct assumption_check {
    std::string name;
    bool ok = false;
    bool strict = false;
    double lhs = 0.0;
    double rhs = 0.0;

    double margin() const { return rhs - lhs; }
};

struct assumption_report {
    bound_kind kind{};
    bool overall = false;
    std::vector<assumption_check> items;
    // m, m_prime, gamma, alpha, h_s, big_c, big_k, zeta, b, delta1,
    // delta2, cap_pi0_star, ybad_lo, ybad_hi, ... (kind-dependent)
    std::vector<std::pair<std::string, double>> constants;

    double constant(const std::string& name) const;
    bool has_constant(const std::string& name) const;
};

// Evaluates every hypothesis of the named result with exact comparisons
// (1e-12 guard only at equality boundaries). Throws when the kind does
// not apply to the scenario's geometry at all.
assumption_report check_assumptions(const scenario& sc, bound_kind kind);

// Five outputs with standard-basis features; ground truth 1 / 0.8 / -1;
// pi0(med) = 0.5, the rest uniform. With assign_med_low_proxy the proxy
// assigns the mediocre output the minimal reward (beneficial1), else
// proxy = ground truth.
scenario build_fig2_scenario(double pi0_star, bool assign_med_low_proxy);

enum class geometry_kind { orthogonal, negative, positive };

std::string to_string(geometry_kind kind);
geometry_kind geometry_kind_from_string(const std::string& s);

// ||phi(star)|| = 1.5, ||phi(med)|| = 1, <phi(star), phi(med)> in
// {0, -3/(2 sqrt 2), +3/(2 sqrt 2)}; pi0 = (.05, .5, .15, .15, .15).
scenario build_geometry_scenario(geometry_kind kind);

struct error_knobs {
    std::optional<int> target_output;       // which output carries the error
    std::optional<double> proxy_value;      // its proxy reward
    std::optional<double> proxy_star_value; // harmful1: demoted r_P(star)
    double epsilon = 0.05;                  // benign2 approximation level
    double horizon = 1.0;                   // benign2 time horizon
};

scenario build_error_scenario(error_label category, const scenario& base, const error_knobs& knobs = {});

// Three outputs: phi(star) = e1, phi(med) = (-rho, sqrt(1-rho^2), 0),
// phi(bad) = lambda e3, theta0 = scale_c * (phi(bad) - phi(star)).
// Requires 0 < lambda^2 < rho < 1.
scenario build_failure_scenario(double rho, double lambda, double scale_c);

}  // namespace rewardlab
