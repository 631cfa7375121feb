#include "rewardlab/theory.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rewardlab {

namespace {

using ld = long double;

std::string describe_failures(const assumption_report& rep) {
    std::ostringstream os;
    os << "assumptions for " << to_string(rep.kind) << " fail:";
    for (const assumption_check& c : rep.items)
        if (!c.ok) os << " [" << c.name << ": " << c.lhs << (c.strict ? " < " : " <= ") << c.rhs << "]";
    return os.str();
}

struct calc_context {
    const scenario& sc;
    assumption_report report;
    int star, med;
    ld r_star, r_med, delta1, delta2, pi_star, pi_med;
    const dvec* structured;
    const dvec* demoted;  // the other reward vector (expected no-med shape)

    calc_context(const scenario& s, bound_kind kind) : sc(s), report(check_assumptions(s, kind)) {
        if (!report.overall) throw assumption_failure(std::move(report));
        const structured_reward_spec& spec = sc.require_structure();
        star = spec.star_index;
        med = spec.med_index;
        structured = &sc.structured_rewards();
        demoted = sc.structure_on_proxy ? &sc.rewards.ground_truth : &sc.rewards.proxy;
        r_star = (*structured)[static_cast<size_t>(star)];
        r_med = (*structured)[static_cast<size_t>(med)];
        delta1 = spec.delta1;
        delta2 = spec.delta2;
        pi_star = sc.initial_probs[static_cast<size_t>(star)];
        pi_med = sc.initial_probs[static_cast<size_t>(med)];
    }

    void require_epsilon(double epsilon) const {
        if (!(epsilon > 0.0) || !(static_cast<ld>(epsilon) < delta1))
            throw std::invalid_argument("epsilon must lie in (0, delta1)");
    }

    ld min_bad_structured() const {
        ld low = 1.0L;
        for (int b : sc.require_structure().bad_indices)
            low = std::min<ld>(low, (*structured)[static_cast<size_t>(b)]);
        return low;
    }

    // True when the non-structured vector equals the structured one except
    // for a demoted mediocre entry (== low, or <= low when allow_below).
    bool demoted_shape(bool allow_below) const {
        const ld low = min_bad_structured();
        for (int y = 0; y < sc.features.count(); ++y) {
            const ld a = (*demoted)[static_cast<size_t>(y)];
            const ld b = (*structured)[static_cast<size_t>(y)];
            if (y == med) {
                if (allow_below ? !(a <= low) : a != low) return false;
            } else if (a != b) {
                return false;
            }
        }
        return true;
    }

    // r_demoted(star) - V_demoted(theta0), exact from initial probabilities.
    ld demoted_star_advantage() const {
        ld v = 0.0L;
        for (size_t i = 0; i < demoted->size(); ++i)
            v += static_cast<ld>(sc.initial_probs[i]) * static_cast<ld>((*demoted)[i]);
        return static_cast<ld>((*demoted)[static_cast<size_t>(star)]) - v;
    }

    void copy_constants(bound_report& out) const { out.constants = report.constants; }
};

ld demoted_run_upper_bound(const calc_context& ctx, ld epsilon, ld star_norm_sq) {
    const ld adv = ctx.demoted_star_advantage();
    return (ctx.r_star + 1.0L) * (ctx.r_star + 1.0L) /
           (epsilon * epsilon * adv * star_norm_sq) / ctx.pi_star;
}

}  // namespace

assumption_failure::assumption_failure(assumption_report rep)
    : std::runtime_error(describe_failures(rep)), report(std::move(rep)) {}

double bound_report::constant(const std::string& name) const {
    for (const auto& [key, value] : constants)
        if (key == name) return value;
    throw std::out_of_range("no constant named " + name + " in bound report");
}

bound_report stall_bounds_orthonormal(const scenario& sc, double epsilon) {
    calc_context ctx(sc, bound_kind::orthonormal_stall);
    ctx.require_epsilon(epsilon);
    const ld eps = epsilon;
    const ld m = ctx.report.constant("m");

    bound_report out;
    out.kind = bound_kind::orthonormal_stall;
    out.exponent = -14.0 / 13.0;
    ctx.copy_constants(out);

    const ld numer = 2.0L * std::sqrt(2.0L) * std::pow(m, 14.0L / 13.0L) * ctx.delta1 * ctx.r_med *
                     (1.0L - std::exp(-std::sqrt(2.0L) * (ctx.delta1 - eps)));
    const ld denom = (ctx.delta1 + ctx.delta2) * (1.0L + 8.0L * ctx.delta1);
    out.lower_bound_t_star =
        static_cast<double>(numer / denom * std::pow(ctx.pi_star, -14.0L / 13.0L));

    if (ctx.demoted_shape(/*allow_below=*/false)) {
        out.upper_bound_t_nomed = static_cast<double>(demoted_run_upper_bound(ctx, eps, 1.0L));
        out.terminal_prob_lower = static_cast<double>(1.0L - eps / (ctx.delta1 + ctx.delta2));
    }
    return out;
}

bound_report stall_bounds_negative_similarity(const scenario& sc, double epsilon) {
    calc_context ctx(sc, bound_kind::negative_similarity_stall);
    ctx.require_epsilon(epsilon);
    const ld eps = epsilon;
    const ld m_prime = ctx.report.constant("m_prime");
    const ld alpha = ctx.report.constant("alpha");
    const ld big_k = ctx.report.constant("big_k");
    const ld big_b = ctx.report.constant("b");
    const ld a_star = ctx.report.constant("a_star_initial");

    bound_report out;
    out.kind = bound_kind::negative_similarity_stall;
    out.exponent = static_cast<double>(-14.0L / 13.0L - alpha);
    out.a_star_near_zero = std::abs(a_star) < 1e-6L;
    ctx.copy_constants(out);

    const ld numer = ctx.r_med * std::pow(m_prime, 14.0L / 13.0L + alpha) *
                     (1.0L - std::exp(-2.0L * (ctx.delta1 - eps)));
    const ld denom = 4.0L * big_b * big_b * (ctx.delta1 + ctx.delta2) * big_k;
    out.lower_bound_t_star =
        static_cast<double>(numer / denom * std::pow(ctx.pi_star, -14.0L / 13.0L - alpha));

    if (ctx.demoted_shape(/*allow_below=*/false)) {
        const ld star_norm = ctx.sc.features.norm(ctx.star);
        out.upper_bound_t_nomed =
            static_cast<double>(demoted_run_upper_bound(ctx, eps, star_norm * star_norm));
    }
    return out;
}

bound_report convergence_bounds_positive_similarity(const scenario& sc, double epsilon) {
    calc_context ctx(sc, bound_kind::positive_similarity);
    ctx.require_epsilon(epsilon);
    const ld eps = epsilon;

    bound_report out;
    out.kind = bound_kind::positive_similarity;
    out.exponent = -1.0;
    ctx.copy_constants(out);

    ld diff_sq = 0.0L;
    for (int d = 0; d < sc.features.dim; ++d) {
        const ld diff = static_cast<ld>(sc.features.vectors[static_cast<size_t>(ctx.star)][static_cast<size_t>(d)]) -
                        static_cast<ld>(sc.features.vectors[static_cast<size_t>(ctx.med)][static_cast<size_t>(d)]);
        diff_sq += diff * diff;
    }
    out.upper_bound_t_star = static_cast<double>(
        (ctx.r_star + 1.0L) * (ctx.r_star + 1.0L) / (eps * eps * ctx.delta1 * diff_sq) / ctx.pi_star);

    if (ctx.demoted_shape(/*allow_below=*/true)) {
        const ld threshold = positive_similarity_suppression_threshold(sc);
        const ld s = sc.features.inner(ctx.star, ctx.med);
        out.similarity_condition = s > threshold;
        out.constants.emplace_back("similarity_threshold", static_cast<double>(threshold));
        if (*out.similarity_condition)
            out.v_truth_ceiling = static_cast<double>(ctx.r_star - ctx.delta1 * ctx.pi_med);
    }
    return out;
}

double positive_similarity_suppression_threshold(const scenario& sc) {
    const structured_reward_spec& spec = sc.require_structure();
    const dvec& demoted = sc.structure_on_proxy ? sc.rewards.ground_truth : sc.rewards.proxy;
    ld v_dem = 0.0L;
    for (size_t i = 0; i < demoted.size(); ++i)
        v_dem += static_cast<ld>(sc.initial_probs[i]) * static_cast<ld>(demoted[i]);
    const ld a_star = static_cast<ld>(demoted[static_cast<size_t>(spec.star_index)]) - v_dem;
    const ld a_med = static_cast<ld>(demoted[static_cast<size_t>(spec.med_index)]) - v_dem;
    const ld w_star = static_cast<ld>(sc.initial_probs[static_cast<size_t>(spec.star_index)]) * a_star;
    const ld w_med = static_cast<ld>(sc.initial_probs[static_cast<size_t>(spec.med_index)]) * a_med;
    const ld star_norm = sc.features.norm(spec.star_index);
    const ld med_norm = sc.features.norm(spec.med_index);
    return static_cast<double>((w_star * star_norm * star_norm - w_med * med_norm * med_norm) /
                               (w_star - w_med));
}

double low_probability_tv_threshold(double b, double delta_z, double epsilon, double horizon) {
    if (!(b > 0.0)) throw std::invalid_argument("feature norm bound must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be nonnegative");
    if (delta_z < 0.0) throw std::invalid_argument("reward disagreement must be nonnegative");
    if (delta_z == 0.0) return std::numeric_limits<double>::infinity();
    const ld exponent = 10.0L * static_cast<ld>(b) * static_cast<ld>(b) * static_cast<ld>(horizon);
    return static_cast<double>(2.0L * static_cast<ld>(epsilon) /
                               (static_cast<ld>(delta_z) * std::exp(exponent)));
}

double gradient_norm_bound(const scenario& sc, const dvec& probs) {
    if (static_cast<int>(probs.size()) != sc.features.count())
        throw std::invalid_argument("probability vector length does not match output count");
    const structured_reward_spec& spec = sc.require_structure();
    const ld big_b = sc.features.max_norm();
    const ld pi_med = probs[static_cast<size_t>(spec.med_index)];
    return static_cast<double>(2.0L * big_b * (static_cast<ld>(spec.delta1) + spec.delta2) *
                               (1.0L - pi_med));
}

failure_check_result negative_similarity_failure_check(const scenario& sc) {
    failure_check_result result;
    result.report = check_assumptions(sc, bound_kind::negative_similarity_failure);
    result.zeta = result.report.constant("zeta");
    result.scale_c = result.report.constant("scale_c");
    result.scale_threshold = result.report.constant("scale_threshold");
    result.all_conditions = result.report.overall;
    if (result.all_conditions)
        result.v_truth_ceiling =
            sc.structured_rewards()[static_cast<size_t>(sc.require_structure().med_index)];
    return result;
}

}  // namespace rewardlab
