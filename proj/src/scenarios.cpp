#include "rewardlab/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "rewardlab/core.hpp"

namespace rewardlab {

namespace {

using ld = long double;

constexpr double boundary_guard = 1e-12;

ld powl_checked(ld base, ld expn) { return std::pow(base, expn); }

struct structured_view {
    const scenario& sc;
    const structured_reward_spec& spec;
    const dvec& r;  // designated reward vector (ground truth, or proxy for the swapped variant)
    int star, med;
    ld r_star, r_med, r_bad, delta1, delta2;
    ld pi_star, pi_med, pi_bad_total;
    ld v0;      // expected designated reward at theta0
    ld a_star;  // r_star - v0

    explicit structured_view(const scenario& s)
        : sc(s), spec(s.require_structure()), r(s.structured_rewards()) {
        star = spec.star_index;
        med = spec.med_index;
        r_star = r[static_cast<size_t>(star)];
        r_med = r[static_cast<size_t>(med)];
        r_bad = r[static_cast<size_t>(spec.bad_indices[0])];
        delta1 = spec.delta1;
        delta2 = spec.delta2;
        pi_star = sc.initial_probs[static_cast<size_t>(star)];
        pi_med = sc.initial_probs[static_cast<size_t>(med)];
        pi_bad_total = 0.0L;
        for (int b : spec.bad_indices) pi_bad_total += sc.initial_probs[static_cast<size_t>(b)];
        v0 = 0.0L;
        for (size_t i = 0; i < r.size(); ++i) v0 += static_cast<ld>(sc.initial_probs[i]) * static_cast<ld>(r[i]);
        a_star = r_star - v0;
    }
};

struct report_builder {
    assumption_report rep;

    void item(const std::string& name, bool strict, ld lhs, ld rhs) {
        assumption_check c;
        c.name = name;
        c.strict = strict;
        c.lhs = static_cast<double>(lhs);
        c.rhs = static_cast<double>(rhs);
        c.ok = strict ? lhs < rhs : lhs <= rhs + boundary_guard * std::max<ld>(1.0L, std::abs(rhs));
        rep.items.push_back(c);
    }

    void constant(const std::string& name, ld value) {
        rep.constants.emplace_back(name, static_cast<double>(value));
    }

    assumption_report finish(bound_kind kind) {
        rep.kind = kind;
        rep.overall = true;
        for (const assumption_check& c : rep.items) rep.overall = rep.overall && c.ok;
        return std::move(rep);
    }
};

void check_bad_features_orthogonal(report_builder& b, const structured_view& v) {
    const feature_set& fs = v.sc.features;
    double worst = 0.0;
    for (int bad : v.spec.bad_indices)
        for (int y = 0; y < fs.count(); ++y)
            if (y != bad) worst = std::max(worst, std::abs(fs.inner(bad, y)));
    b.item("bad_features_orthogonal", false, worst, 0.0L);
}

void check_reward_structure(report_builder& b, const structured_view& v) {
    b.item("med_reward_positive", true, 0.0L, v.r_med);
    b.item("bad_reward_nonpositive", false, v.r_bad, 0.0L);
    b.item("delta1_positive", true, 0.0L, v.delta1);
    b.item("delta2_positive", true, 0.0L, v.delta2);
}

// Shared initial-policy conditions. m_like is M for the orthonormal case
// and M' for the similarity cases; cap_core is the min{...}^{13/14} term.
void check_initial_policy(report_builder& b, const structured_view& v, ld m_like, ld cap_core,
                          std::optional<ld> similarity_cap) {
    ld cap = m_like * cap_core;
    if (similarity_cap) cap = std::min(cap, *similarity_cap);
    b.item("pi0_star_cap", true, v.pi_star, cap);

    const ld gamma = powl_checked(v.pi_star / m_like, 14.0L / 13.0L);
    const ld lo = std::max(2.0L * std::sqrt(gamma) / v.delta2, 0.05L * v.r_med);
    const ld hi = 0.1L * v.r_med;
    b.item("ybad_window_lo", false, lo, v.pi_bad_total);
    b.item("ybad_window_hi", false, v.pi_bad_total, hi);

    b.constant("gamma", gamma);
    b.constant("cap_pi0_star", cap);
    b.constant("ybad_lo", lo);
    b.constant("ybad_hi", hi);
}

assumption_report check_orthonormal(const scenario& sc) {
    structured_view v(sc);
    report_builder b;
    check_reward_structure(b, v);

    const feature_set& fs = sc.features;
    double worst = 0.0;
    for (int i = 0; i < fs.count(); ++i)
        for (int j = i; j < fs.count(); ++j)
            worst = std::max(worst, std::abs(fs.inner(i, j) - (i == j ? 1.0 : 0.0)));
    b.item("orthonormal_features", false, worst, 0.0L);

    const ld sum = v.delta1 + v.delta2;
    const ld m = std::min(1.0L, 0.05L * powl_checked(v.r_med, 2.0L / 7.0L) / sum);
    const ld core = powl_checked(
        std::min({0.01L, powl_checked(21.0L / (1100.0L * sum), 7.0L / 3.0L), v.delta2 * v.delta2}),
        13.0L / 14.0L);
    b.constant("m", m);
    b.constant("b", fs.max_norm());
    b.constant("delta1", v.delta1);
    b.constant("delta2", v.delta2);
    b.constant("v0", v.v0);
    check_initial_policy(b, v, m, core, std::nullopt);

    assumption_report rep = b.finish(bound_kind::orthonormal_stall);
    if (rep.overall) {
        // implied by the assumptions; a violation would mean a checker bug
        const ld gamma = powl_checked(v.pi_star / m, 14.0L / 13.0L);
        if (!(v.v0 < v.r_med - std::sqrt(gamma)))
            throw std::logic_error("assumption checker inconsistency: initial value gap violated");
    }
    return rep;
}

assumption_report check_similarity(const scenario& sc, bound_kind kind) {
    structured_view v(sc);
    const feature_set& fs = sc.features;
    const ld s = fs.inner(v.star, v.med);
    if (kind == bound_kind::negative_similarity_stall && !(s < 0.0L))
        throw std::invalid_argument("negative-similarity bounds need <phi(star), phi(med)> < 0, got s = " +
                                    std::to_string(static_cast<double>(s)));
    if (kind == bound_kind::positive_similarity && !(s > 0.0L))
        throw std::invalid_argument("positive-similarity bounds need <phi(star), phi(med)> > 0, got s = " +
                                    std::to_string(static_cast<double>(s)));

    report_builder b;
    check_reward_structure(b, v);
    check_bad_features_orthogonal(b, v);

    const ld norm_star = fs.norm(v.star);
    const ld norm_med = fs.norm(v.med);
    const ld f = norm_star * norm_star;
    const ld g = norm_med * norm_med;
    const ld big_b = fs.max_norm();
    const ld sum = v.delta1 + v.delta2;

    if (kind == bound_kind::negative_similarity_stall) {
        ld worst_bad_norm = 0.0L;
        for (int bad : v.spec.bad_indices) worst_bad_norm = std::max<ld>(worst_bad_norm, fs.norm(bad));
        b.item("med_norm_dominates_bad", false, worst_bad_norm, norm_med);
    }

    const ld m_prime = std::min(1.0L, g * powl_checked(v.r_med, 2.0L / 7.0L) / (40.0L * big_b * big_b * sum));
    const ld core = powl_checked(
        std::min(0.01L, powl_checked(21.0L * g / (1100.0L * big_b * big_b * sum), 7.0L / 3.0L)),
        13.0L / 14.0L);
    const ld similarity_cap = (norm_med / norm_star) * v.pi_med;

    b.constant("m_prime", m_prime);
    b.constant("b", big_b);
    b.constant("s", s);
    b.constant("delta1", v.delta1);
    b.constant("delta2", v.delta2);
    b.constant("v0", v.v0);
    b.constant("a_star_initial", v.a_star);
    check_initial_policy(b, v, m_prime, core, similarity_cap);

    if (kind == bound_kind::negative_similarity_stall) {
        const ld alpha = -s / (26.0L * (g - 0.5L * s));
        const ld h_s = (g - s) / (7.0L * (g - 0.5L * s));
        const ld big_c = powl_checked(26.0L / (v.r_med * v.r_med), 13.0L * alpha / 7.0L);
        const ld big_k = big_c * (1.0L + g * v.pi_med * v.pi_med / (8.0L * (f - s) * v.a_star));
        b.constant("alpha", alpha);
        b.constant("h_s", h_s);
        b.constant("big_c", big_c);
        b.constant("big_k", big_k);
        b.item("alpha_in_range", false, alpha, 1.0L / 13.0L);
    } else {
        b.item("similarity_above_med_norm_sq", true, g, s);
        b.item("similarity_below_star_norm_sq", true, s, f);
        b.item("star_norm_sq_regime", true, f, 100.0L * g);
    }

    assumption_report rep = b.finish(kind);
    if (rep.overall) {
        const ld gamma = powl_checked(v.pi_star / m_prime, 14.0L / 13.0L);
        if (!(v.v0 < v.r_med - std::sqrt(gamma)))
            throw std::logic_error("assumption checker inconsistency: initial value gap violated");
    }
    return rep;
}

assumption_report check_failure(const scenario& sc) {
    if (!sc.initial_theta)
        throw std::invalid_argument(
            "failure check needs explicit theta0 of the form C * (phi(bad) - phi(star))");
    structured_view v(sc);
    const feature_set& fs = sc.features;
    const ld s = fs.inner(v.star, v.med);
    if (!(s < 0.0L))
        throw std::invalid_argument("failure check needs <phi(star), phi(med)> < 0, got s = " +
                                    std::to_string(static_cast<double>(s)));

    report_builder b;
    check_reward_structure(b, v);
    check_bad_features_orthogonal(b, v);

    const ld norm_med = fs.norm(v.med);
    ld worst_bad_norm = 0.0L;
    for (int bad : v.spec.bad_indices) worst_bad_norm = std::max<ld>(worst_bad_norm, fs.norm(bad));
    b.item("med_norm_dominates_bad", false, worst_bad_norm, norm_med);

    // theta0 = C * (phi(bad) - phi(star)) for one of the bad outputs
    const dvec& theta0 = *sc.initial_theta;
    double theta_norm = 0.0;
    for (double x : theta0) theta_norm += x * x;
    theta_norm = std::sqrt(theta_norm);

    int best_bad = -1;
    double best_residual = std::numeric_limits<double>::infinity();
    double best_c = 0.0, best_dir_sq = 0.0;
    for (int bad : v.spec.bad_indices) {
        double dir_sq = 0.0, proj = 0.0;
        for (int d = 0; d < fs.dim; ++d) {
            const double dir = fs.vectors[static_cast<size_t>(bad)][static_cast<size_t>(d)] -
                               fs.vectors[static_cast<size_t>(v.star)][static_cast<size_t>(d)];
            dir_sq += dir * dir;
            proj += dir * theta0[static_cast<size_t>(d)];
        }
        const double c = proj / dir_sq;
        double residual = 0.0;
        for (int d = 0; d < fs.dim; ++d) {
            const double dir = fs.vectors[static_cast<size_t>(bad)][static_cast<size_t>(d)] -
                               fs.vectors[static_cast<size_t>(v.star)][static_cast<size_t>(d)];
            const double diff = theta0[static_cast<size_t>(d)] - c * dir;
            residual += diff * diff;
        }
        residual = std::sqrt(residual);
        if (residual < best_residual) {
            best_residual = residual;
            best_bad = bad;
            best_c = c;
            best_dir_sq = dir_sq;
        }
    }
    if (best_bad < 0 || best_residual > 1e-9 * std::max(theta_norm, 1.0))
        throw std::invalid_argument("theta0 is not of the form C * (phi(bad) - phi(star)); residual " +
                                    std::to_string(best_residual));

    // the mediocre output is initially the most likely
    ld max_other = 0.0L;
    for (int y = 0; y < fs.count(); ++y)
        if (y != v.med)
            max_other = std::max<ld>(max_other, sc.initial_probs[static_cast<size_t>(y)]);
    b.item("med_prob_maximal", true, max_other, v.pi_med);

    b.item("star_vs_bad_mass", false, v.pi_star, v.delta2 * v.pi_bad_total / v.delta1);

    const ld pi_bad = sc.initial_probs[static_cast<size_t>(best_bad)];
    const ld zeta = (std::log(v.pi_med) - std::log(pi_bad)) / (std::log(v.pi_med) - std::log(v.pi_star)) *
                    ((v.v0 - v.r_bad) / (v.r_star - v.v0));
    const ld threshold = std::max<ld>(0.0L, -std::log(zeta) / static_cast<ld>(best_dir_sq));
    b.item("zeta_positive", true, 0.0L, zeta);
    b.item("scale_above_threshold", true, threshold, best_c);

    b.constant("b", fs.max_norm());
    b.constant("s", s);
    b.constant("delta1", v.delta1);
    b.constant("delta2", v.delta2);
    b.constant("v0", v.v0);
    b.constant("zeta", zeta);
    b.constant("scale_c", best_c);
    b.constant("scale_threshold", threshold);
    b.constant("dir_norm_sq", best_dir_sq);
    b.constant("fitted_bad_index", best_bad);
    return b.finish(bound_kind::negative_similarity_failure);
}

dvec standard_basis_vector(int dim, int index) {
    dvec v(static_cast<size_t>(dim), 0.0);
    v[static_cast<size_t>(index)] = 1.0;
    return v;
}

}  // namespace

std::string to_string(bound_kind kind) {
    switch (kind) {
        case bound_kind::orthonormal_stall: return "orthonormal_stall";
        case bound_kind::negative_similarity_stall: return "negative_similarity_stall";
        case bound_kind::positive_similarity: return "positive_similarity";
        case bound_kind::negative_similarity_failure: return "negative_similarity_failure";
    }
    throw std::logic_error("unreachable bound_kind");
}

bound_kind bound_kind_from_string(const std::string& s) {
    if (s == "orthonormal_stall") return bound_kind::orthonormal_stall;
    if (s == "negative_similarity_stall") return bound_kind::negative_similarity_stall;
    if (s == "positive_similarity") return bound_kind::positive_similarity;
    if (s == "negative_similarity_failure") return bound_kind::negative_similarity_failure;
    throw std::invalid_argument("unknown bound kind: " + s);
}

double assumption_report::constant(const std::string& name) const {
    for (const auto& [key, value] : constants)
        if (key == name) return value;
    throw std::out_of_range("no constant named " + name + " in assumption report");
}

bool assumption_report::has_constant(const std::string& name) const {
    for (const auto& [key, value] : constants)
        if (key == name) return true;
    return false;
}

assumption_report check_assumptions(const scenario& sc, bound_kind kind) {
    sc.validate();
    switch (kind) {
        case bound_kind::orthonormal_stall: return check_orthonormal(sc);
        case bound_kind::negative_similarity_stall:
        case bound_kind::positive_similarity: return check_similarity(sc, kind);
        case bound_kind::negative_similarity_failure: return check_failure(sc);
    }
    throw std::logic_error("unreachable bound_kind");
}

scenario build_fig2_scenario(double pi0_star, bool assign_med_low_proxy) {
    if (!(pi0_star > 0.0) || !(pi0_star < 0.5))
        throw std::invalid_argument("pi0_star must lie in (0, 0.5)");

    constexpr int n = 5;
    std::vector<dvec> basis;
    basis.reserve(n);
    for (int i = 0; i < n; ++i) basis.push_back(standard_basis_vector(n, i));

    scenario sc;
    sc.features = make_feature_set(n, std::move(basis));
    dvec truth = {1.0, 0.8, -1.0, -1.0, -1.0};
    dvec proxy = truth;
    if (assign_med_low_proxy) proxy[1] = -1.0;
    sc.rewards = make_reward_table(std::move(proxy), std::move(truth));
    sc.structure = structured_reward_spec::from_rewards(sc.rewards.ground_truth);
    const double rest = (0.5 - pi0_star) / 3.0;
    sc.initial_probs = {pi0_star, 0.5, rest, rest, rest};
    sc.seed = 20250901;
    sc.label = assign_med_low_proxy ? error_label::beneficial1 : error_label::custom;
    sc.validate();
    return sc;
}

std::string to_string(geometry_kind kind) {
    switch (kind) {
        case geometry_kind::orthogonal: return "orthogonal";
        case geometry_kind::negative: return "negative";
        case geometry_kind::positive: return "positive";
    }
    throw std::logic_error("unreachable geometry_kind");
}

geometry_kind geometry_kind_from_string(const std::string& s) {
    if (s == "orthogonal") return geometry_kind::orthogonal;
    if (s == "negative") return geometry_kind::negative;
    if (s == "positive") return geometry_kind::positive;
    throw std::invalid_argument("unknown geometry kind: " + s);
}

scenario build_geometry_scenario(geometry_kind kind) {
    constexpr int n = 5;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<dvec> vectors(n);
    vectors[0] = {1.5, 0.0, 0.0, 0.0, 0.0};
    switch (kind) {
        case geometry_kind::orthogonal: vectors[1] = {0.0, 1.0, 0.0, 0.0, 0.0}; break;
        case geometry_kind::negative: vectors[1] = {-inv_sqrt2, inv_sqrt2, 0.0, 0.0, 0.0}; break;
        case geometry_kind::positive: vectors[1] = {inv_sqrt2, inv_sqrt2, 0.0, 0.0, 0.0}; break;
    }
    for (int i = 2; i < n; ++i) vectors[static_cast<size_t>(i)] = standard_basis_vector(n, i);

    scenario sc;
    sc.features = make_feature_set(n, std::move(vectors));
    dvec truth = {1.0, 0.8, -1.0, -1.0, -1.0};
    sc.rewards = make_reward_table(truth, truth);
    sc.structure = structured_reward_spec::from_rewards(sc.rewards.ground_truth);
    sc.initial_probs = {0.05, 0.5, 0.15, 0.15, 0.15};
    sc.seed = 20250902;
    sc.label = error_label::custom;
    sc.validate();
    return sc;
}

namespace {

[[noreturn]] void construction_error(error_label category, const std::string& inequality) {
    throw std::invalid_argument("cannot realize category " + to_string(category) +
                                ": violated inequality " + inequality);
}

}  // namespace

scenario build_error_scenario(error_label category, const scenario& base, const error_knobs& knobs) {
    base.validate();
    const structured_reward_spec& base_spec = base.require_structure();
    scenario sc = base;
    sc.label = category;
    const int n = sc.features.count();
    const int star = base_spec.star_index;
    const int med = base_spec.med_index;

    switch (category) {
        case error_label::benign1: {
            const int target = knobs.target_output.value_or(base_spec.bad_indices.front());
            double v_p = expected_reward(sc.initial_probs, sc.rewards.proxy);
            const double value = knobs.proxy_value.value_or(std::max(-1.0, v_p - 0.1));
            sc.rewards.proxy[static_cast<size_t>(target)] = value;
            sc.rewards = make_reward_table(sc.rewards.proxy, sc.rewards.ground_truth);
            v_p = expected_reward(sc.initial_probs, sc.rewards.proxy);
            if (!(value < v_p)) construction_error(category, "r_P(target) < V_P(theta0)");
            if (value == sc.rewards.ground_truth[static_cast<size_t>(target)])
                construction_error(category, "r_P(target) != r_G(target)");
            break;
        }
        case error_label::benign2: {
            const int target = knobs.target_output.value_or(n - 1);
            const double truth = sc.rewards.ground_truth[static_cast<size_t>(target)];
            const double value = knobs.proxy_value.value_or(truth >= 0.0 ? -1.0 : 1.0);
            if (value == truth) construction_error(category, "r_P(target) != r_G(target)");
            sc.rewards.proxy[static_cast<size_t>(target)] = value;
            sc.rewards = make_reward_table(sc.rewards.proxy, sc.rewards.ground_truth);

            const scenario::disagreement_info info = sc.disagreement_set();
            const double big_b = sc.features.max_norm();
            const long double threshold =
                2.0L * static_cast<long double>(knobs.epsilon) /
                (static_cast<long double>(info.max_gap) *
                 std::exp(10.0L * static_cast<long double>(big_b) * static_cast<long double>(big_b) *
                          static_cast<long double>(knobs.horizon)));
            const double target_mass = static_cast<double>(threshold);
            if (!(target_mass > 0.0) || !(target_mass < 1.0))
                construction_error(category, "pi0(Z) threshold in (0, 1)");

            const double old_mass = info.initial_prob;
            const double scale_in = target_mass / old_mass;
            const double scale_out = (1.0 - target_mass) / (1.0 - old_mass);
            std::vector<bool> in_z(static_cast<size_t>(n), false);
            for (int z : info.outputs) in_z[static_cast<size_t>(z)] = true;
            for (int y = 0; y < n; ++y)
                sc.initial_probs[static_cast<size_t>(y)] *= in_z[static_cast<size_t>(y)] ? scale_in : scale_out;

            const scenario::disagreement_info check = sc.disagreement_set();
            if (!(check.initial_prob <= target_mass * (1.0 + 1e-12)))
                construction_error(category, "pi0(Z) <= 2*eps / (Delta_Z * exp(10 B^2 T))");
            break;
        }
        case error_label::beneficial1: {
            double low = 1.0;
            for (int b : base_spec.bad_indices)
                low = std::min(low, sc.rewards.ground_truth[static_cast<size_t>(b)]);
            sc.rewards.proxy = sc.rewards.ground_truth;
            sc.rewards.proxy[static_cast<size_t>(med)] = low;
            if (!(sc.initial_probs[static_cast<size_t>(med)] > sc.initial_probs[static_cast<size_t>(star)]))
                construction_error(category, "pi0(med) > pi0(star)");
            const double v_g = expected_reward(sc.initial_probs, sc.rewards.ground_truth);
            if (!(sc.rewards.ground_truth[static_cast<size_t>(med)] > v_g))
                construction_error(category, "r_G(med) > V_G(theta0)");
            break;
        }
        case error_label::harmful1: {
            const int target = knobs.target_output.value_or(base_spec.bad_indices.front());
            const double bad_value = knobs.proxy_value.value_or(1.0);
            const double star_value = knobs.proxy_star_value.value_or(0.9);
            sc.rewards.proxy[static_cast<size_t>(target)] = bad_value;
            sc.rewards.proxy[static_cast<size_t>(star)] = star_value;
            sc.rewards = make_reward_table(sc.rewards.proxy, sc.rewards.ground_truth);
            if (!(bad_value > star_value)) construction_error(category, "r_P(bad) > r_P(star)");
            break;
        }
        case error_label::harmful2: {
            // role swap: the proxy keeps the three-tier shape and the
            // ground truth demotes the proxy-mediocre output
            double low = 1.0;
            for (int b : base_spec.bad_indices)
                low = std::min(low, base.rewards.ground_truth[static_cast<size_t>(b)]);
            sc.rewards.proxy = base.rewards.ground_truth;
            sc.rewards.ground_truth = base.rewards.ground_truth;
            sc.rewards.ground_truth[static_cast<size_t>(med)] = low;
            sc.structure_on_proxy = true;
            sc.structure = structured_reward_spec::from_rewards(sc.rewards.proxy);

            const double v_p = expected_reward(sc.initial_probs, sc.rewards.proxy);
            const double r_p_target = sc.rewards.proxy[static_cast<size_t>(med)];
            if (!(v_p < r_p_target)) construction_error(category, "V_P(theta0) < r_P(bad)");
            if (!(r_p_target < sc.rewards.proxy[static_cast<size_t>(star)]))
                construction_error(category, "r_P(bad) < r_P(star)");
            if (!(sc.initial_probs[static_cast<size_t>(med)] > sc.initial_probs[static_cast<size_t>(star)]))
                construction_error(category, "pi0(bad) > pi0(star)");
            break;
        }
        case error_label::custom:
            throw std::invalid_argument("custom is not a constructible category");
    }
    sc.validate();
    return sc;
}

scenario build_failure_scenario(double rho, double lambda, double scale_c) {
    if (!(lambda > 0.0) || !(lambda * lambda < rho) || !(rho < 1.0))
        throw std::invalid_argument("need 0 < lambda^2 < rho < 1");
    if (!(scale_c > 0.0)) throw std::invalid_argument("scale_c must be positive");

    scenario sc;
    sc.features = make_feature_set(3, {{1.0, 0.0, 0.0},
                                       {-rho, std::sqrt(1.0 - rho * rho), 0.0},
                                       {0.0, 0.0, lambda}});
    dvec truth = {1.0, 0.8, -1.0};
    sc.rewards = make_reward_table(truth, truth);
    sc.structure = structured_reward_spec::from_rewards(sc.rewards.ground_truth);
    sc.initial_theta = dvec{-scale_c, 0.0, scale_c * lambda};
    sc.initial_probs = softmax_probs(sc.features, policy_params{*sc.initial_theta});
    sc.seed = 20250903;
    sc.label = error_label::custom;
    sc.validate();
    return sc;
}

}  // namespace rewardlab
