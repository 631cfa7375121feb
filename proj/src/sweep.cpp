#include "rewardlab/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rewardlab/csv.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/theory.hpp"

namespace rewardlab {

namespace {

// Geometry-appropriate bound kind, or nullopt when none applies.
std::optional<bound_kind> select_bound_kind(const scenario& sc) {
    const structured_reward_spec& spec = sc.require_structure();
    const feature_set& fs = sc.features;
    bool orthonormal = true;
    for (int i = 0; i < fs.count() && orthonormal; ++i)
        for (int j = i; j < fs.count(); ++j)
            if (std::abs(fs.inner(i, j) - (i == j ? 1.0 : 0.0)) > 1e-12) {
                orthonormal = false;
                break;
            }
    if (orthonormal) return bound_kind::orthonormal_stall;
    const double s = fs.inner(spec.star_index, spec.med_index);
    if (s < 0.0) return bound_kind::negative_similarity_stall;
    if (s > 0.0) return bound_kind::positive_similarity;
    return std::nullopt;
}

std::optional<double> median_hit(std::vector<std::optional<double>>& hits) {
    std::vector<double> finite;
    for (const auto& h : hits)
        if (h) finite.push_back(*h);
    if (finite.size() * 2 < hits.size() || finite.empty()) return std::nullopt;
    std::sort(finite.begin(), finite.end());
    const size_t m = finite.size() / 2;
    return finite.size() % 2 == 1 ? finite[m] : 0.5 * (finite[m - 1] + finite[m]);
}

run_record run_one_value(const sweep_spec& spec, double value) {
    run_record rec;
    rec.swept_value = value;
    rec.integrator_desc = spec.integrator.describe();
    rec.version = version_string;

    scenario sc = instantiate_pi0_star(spec.base, value);
    rec.label = to_string(sc.label);
    rec.seed = derive_stream_seed(spec.base.seed, "sweep/pi0_star=" + format_g17(value));
    sc.seed = rec.seed;

    const double threshold =
        sc.rewards.ground_truth[static_cast<size_t>(sc.require_structure().star_index)] - spec.epsilon;
    flow_options opts;
    opts.stop_when_v_truth_at_least = threshold;

    auto hit_of = [&](const trajectory& traj) { return hitting_time(traj, spec.epsilon, sc).t_hit; };

    if (spec.estimator == estimator_kind::exact) {
        rec.t_hit_proxy = hit_of(run_flow(sc, reward_choice::proxy, spec.integrator, opts));
        rec.t_hit_truth = hit_of(run_flow(sc, reward_choice::ground_truth, spec.integrator, opts));
    } else {
        std::vector<std::optional<double>> proxy_hits, truth_hits;
        for (int r = 0; r < spec.replicates; ++r) {
            const std::uint64_t seed =
                derive_stream_seed(rec.seed, "replicate/" + std::to_string(r));
            proxy_hits.push_back(hit_of(run_reinforce(sc, spec.integrator, seed, opts)));
            truth_hits.push_back(
                hit_of(run_reinforce(sc, spec.integrator, seed, opts, reward_choice::ground_truth)));
        }
        rec.t_hit_proxy = median_hit(proxy_hits);
        rec.t_hit_truth = median_hit(truth_hits);
    }

    if (const std::optional<bound_kind> kind = select_bound_kind(sc)) {
        try {
            bound_report bounds;
            switch (*kind) {
                case bound_kind::orthonormal_stall:
                    bounds = stall_bounds_orthonormal(sc, spec.epsilon);
                    break;
                case bound_kind::negative_similarity_stall:
                    bounds = stall_bounds_negative_similarity(sc, spec.epsilon);
                    break;
                default:
                    bounds = convergence_bounds_positive_similarity(sc, spec.epsilon);
                    break;
            }
            rec.assumption_ok = true;
            rec.bound_lower = bounds.lower_bound_t_star;
            rec.bound_upper = bounds.upper_bound_t_nomed ? bounds.upper_bound_t_nomed
                                                         : bounds.upper_bound_t_star;
            rec.exponent = bounds.exponent;
        } catch (const assumption_failure&) {
            rec.assumption_ok = false;
        }
    }
    return rec;
}

std::string opt_field(const std::optional<double>& v, const char* absent) {
    return v ? format_g17(*v) : absent;
}

std::optional<double> parse_opt_field(const std::string& s, const char* absent) {
    if (s == absent) return std::nullopt;
    return std::stod(s);
}

}  // namespace

scenario instantiate_pi0_star(const scenario& base, double pi0_star) {
    if (!(pi0_star > 0.0) || !(pi0_star < 0.5))
        throw std::invalid_argument("pi0_star must lie in (0, 0.5)");
    scenario sc = base;
    const structured_reward_spec& spec = sc.require_structure();
    sc.initial_theta.reset();
    const int star = spec.star_index;
    const int med = spec.med_index;
    const double med_prob = base.initial_probs[static_cast<size_t>(med)];
    const double bad_mass = 1.0 - pi0_star - med_prob;
    if (!(bad_mass > 0.0))
        throw std::invalid_argument("pi0_star leaves no probability mass for the bad outputs");
    sc.initial_probs.assign(sc.initial_probs.size(), bad_mass / static_cast<double>(spec.bad_indices.size()));
    sc.initial_probs[static_cast<size_t>(star)] = pi0_star;
    sc.initial_probs[static_cast<size_t>(med)] = med_prob;
    sc.validate();
    return sc;
}

std::vector<run_record> run_sweep(const sweep_spec& spec) {
    const int n = static_cast<int>(spec.values.size());
    std::vector<run_record> records(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            records[static_cast<size_t>(i)] = run_one_value(spec, spec.values[static_cast<size_t>(i)]);
        } catch (const std::exception& e) {
            run_record rec;
            rec.label = to_string(spec.base.label);
            rec.swept_value = spec.values[static_cast<size_t>(i)];
            rec.integrator_desc = spec.integrator.describe();
            rec.version = version_string;
            rec.error = e.what();
            records[static_cast<size_t>(i)] = std::move(rec);
        }
    }
    return records;
}

void write_sweep_csv(const std::vector<run_record>& records, const std::string& path) {
    std::ostringstream os;
    os << "label,swept_value,t_hit_proxy,t_hit_truth,bound_lower,bound_upper,exponent,"
          "assumption_ok,seed,integrator,version,error\n";
    for (const run_record& r : records) {
        os << r.label << ',' << format_g17(r.swept_value) << ',' << opt_field(r.t_hit_proxy, "not_reached")
           << ',' << opt_field(r.t_hit_truth, "not_reached") << ',' << opt_field(r.bound_lower, "n/a") << ','
           << opt_field(r.bound_upper, "n/a") << ',' << opt_field(r.exponent, "n/a") << ','
           << (r.assumption_ok ? "true" : "false") << ',' << r.seed << ',' << r.integrator_desc << ','
           << r.version << ',' << r.error << '\n';
    }
    write_text_file_atomic(path, os.str());
}

std::vector<run_record> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sweep file " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty sweep file");
    std::vector<run_record> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::string> f;
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        while (f.size() < 12) f.emplace_back();
        run_record r;
        r.label = f[0];
        r.swept_value = std::stod(f[1]);
        r.t_hit_proxy = parse_opt_field(f[2], "not_reached");
        r.t_hit_truth = parse_opt_field(f[3], "not_reached");
        r.bound_lower = parse_opt_field(f[4], "n/a");
        r.bound_upper = parse_opt_field(f[5], "n/a");
        r.exponent = parse_opt_field(f[6], "n/a");
        r.assumption_ok = f[7] == "true";
        r.seed = std::stoull(f[8]);
        r.integrator_desc = f[9];
        r.version = f[10];
        r.error = f[11];
        records.push_back(std::move(r));
    }
    return records;
}

void emit_plotdata(const trajectory& traj, const std::string& path) { write_trajectory_csv(traj, path); }

void emit_plotdata(const std::vector<run_record>& records, const std::string& path) {
    write_sweep_csv(records, path);
}

scaling_fit fit_scaling_exponent(const std::vector<run_record>& records, run_kind which) {
    dvec pi0, hits;
    for (const run_record& r : records) {
        const std::optional<double>& h = which == run_kind::proxy_run ? r.t_hit_proxy : r.t_hit_truth;
        if (!h)
            throw std::invalid_argument(
                "record at pi0_star=" + format_g17(r.swept_value) +
                " never reached the threshold; rerun the sweep with a longer horizon");
        pi0.push_back(r.swept_value);
        hits.push_back(*h);
    }
    return fit_scaling_exponent(pi0, hits);
}

scaling_fit fit_scaling_exponent(const dvec& pi0_values, const dvec& hit_times) {
    if (pi0_values.size() != hit_times.size())
        throw std::invalid_argument("scaling fit inputs differ in length");
    if (pi0_values.size() < 3) throw std::invalid_argument("scaling fit needs at least 3 records");
    const size_t n = pi0_values.size();
    dvec x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(pi0_values[i] > 0.0) || !(hit_times[i] > 0.0))
            throw std::invalid_argument("scaling fit needs positive values and hitting times");
        x[i] = std::log(pi0_values[i]);
        y[i] = std::log(hit_times[i]);
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double cov = 0.0, var = 0.0;
    for (size_t i = 0; i < n; ++i) {
        cov += (x[i] - mx) * (y[i] - my);
        var += (x[i] - mx) * (x[i] - mx);
    }
    if (var == 0.0) throw std::invalid_argument("scaling fit needs at least two distinct swept values");
    scaling_fit fit;
    fit.slope = cov / var;
    fit.intercept = my - fit.slope * mx;
    for (size_t i = 0; i < n; ++i)
        fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - (fit.intercept + fit.slope * x[i])));
    return fit;
}

}  // namespace rewardlab
