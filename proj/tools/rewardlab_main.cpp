#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>

#include "rewardlab/csv.hpp"
#include "rewardlab/metrics.hpp"
#include "rewardlab/rng.hpp"
#include "rewardlab/sweep.hpp"
#include "rewardlab/theory.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace rewardlab;

namespace {

void write_json_atomic(const json& obj, const std::string& path) {
    write_text_file_atomic(path, obj.dump(2) + "\n");
}

json hitting_to_json(const hitting_time_result& hit) {
    json obj;
    obj["epsilon"] = hit.epsilon;
    obj["threshold"] = hit.threshold;
    if (hit.t_hit)
        obj["t_hit"] = *hit.t_hit;
    else
        obj["t_hit"] = "not_reached";
    return obj;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override) {
    parsed_config config = parse_config(config_path);
    auto* job = std::get_if<simulation_job>(&config);
    if (!job) throw std::runtime_error("simulate needs a config with kind 'scenario'");
    if (seed_override) job->sc.seed = *seed_override;
    fs::create_directories(out_dir);

    flow_options opts;
    if (job->stop_when_v_truth_at_least) opts.stop_when_v_truth_at_least = job->stop_when_v_truth_at_least;

    json meta;
    meta["schema_version"] = config_schema_version;
    meta["version"] = version_string;
    meta["rng"] = rng_name;
    meta["integrator"] = job->integrator.describe();
    meta["estimator"] = to_string(job->estimator);

    auto run_one = [&](reward_choice choice, const std::string& name) {
        trajectory traj;
        if (job->estimator == estimator_kind::reinforce)
            traj = run_reinforce(job->sc, job->integrator, job->sc.seed, opts, choice);
        else
            traj = run_flow(job->sc, choice, job->integrator, opts);
        write_trajectory_csv(traj, (fs::path(out_dir) / ("trajectory_" + name + ".csv")).string());
        json run_meta;
        run_meta["total_steps"] = traj.total_steps;
        run_meta["stopped_early"] = traj.stopped_early;
        run_meta["v_decrease_warnings"] = traj.v_decrease_warnings;
        if (job->epsilon) run_meta["hitting"] = hitting_to_json(hitting_time(traj, *job->epsilon, job->sc));
        meta["runs"][name] = run_meta;
    };

    if (job->optimize_both) {
        run_one(reward_choice::proxy, "proxy");
        run_one(reward_choice::ground_truth, "truth");
    } else {
        run_one(job->optimize, job->optimize == reward_choice::proxy ? "proxy" : "truth");
    }
    meta["config"] = json::parse(serialize_config(config));
    write_json_atomic(meta, (fs::path(out_dir) / "run.json").string());
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir) {
    parsed_config config = parse_config(config_path);
    auto* spec = std::get_if<sweep_spec>(&config);
    if (!spec) throw std::runtime_error("sweep needs a config with kind 'sweep'");
    fs::create_directories(out_dir);

    const std::vector<run_record> records = run_sweep(*spec);
    write_sweep_csv(records, (fs::path(out_dir) / "sweep.csv").string());

    json meta;
    meta["schema_version"] = config_schema_version;
    meta["version"] = version_string;
    meta["rng"] = rng_name;
    meta["rows"] = records.size();
    meta["config"] = json::parse(serialize_config(config));
    write_json_atomic(meta, (fs::path(out_dir) / "run.json").string());
    return 0;
}

int cmd_metrics(const std::string& dataset_path, const std::string& values_path, const std::string& out_path) {
    const preference_dataset dataset = read_dataset_file(dataset_path);
    const std::vector<value_estimate> values = read_values_file(values_path);
    const metrics_summary summary = compute_all_metrics(dataset, values);

    json out;
    out["schema_version"] = config_schema_version;
    out["version"] = version_string;
    out["n_examples"] = summary.n_examples;
    out["acc"] = summary.acc;
    out["acc_w"] = summary.acc_w;
    out["hacc"] = summary.hacc;
    out["hacc_w"] = summary.hacc_w;
    write_json_atomic(out, out_path);
    return 0;
}

json report_to_json(const assumption_report& rep) {
    json out;
    out["kind"] = to_string(rep.kind);
    out["overall"] = rep.overall;
    json items = json::array();
    for (const assumption_check& c : rep.items) {
        items.push_back(json{{"name", c.name},
                             {"ok", c.ok},
                             {"lhs", c.lhs},
                             {"relation", c.strict ? "<" : "<="},
                             {"rhs", c.rhs},
                             {"margin", c.margin()}});
    }
    out["items"] = items;
    json constants;
    for (const auto& [name, value] : rep.constants) constants[name] = value;
    out["constants"] = constants;
    return out;
}

int cmd_check(const std::string& config_path, const std::string& kind_name, std::optional<double> epsilon,
              const std::string& out_path) {
    parsed_config config = parse_config(config_path);
    auto* job = std::get_if<simulation_job>(&config);
    if (!job) throw std::runtime_error("check needs a config with kind 'scenario'");
    const scenario& sc = job->sc;

    bound_kind kind;
    if (!kind_name.empty()) {
        kind = bound_kind_from_string(kind_name);
    } else {
        const structured_reward_spec& spec = sc.require_structure();
        const double s = sc.features.inner(spec.star_index, spec.med_index);
        if (sc.initial_theta && s < 0.0)
            kind = bound_kind::negative_similarity_failure;
        else if (s < 0.0)
            kind = bound_kind::negative_similarity_stall;
        else if (s > 0.0)
            kind = bound_kind::positive_similarity;
        else
            kind = bound_kind::orthonormal_stall;
    }

    const assumption_report report = check_assumptions(sc, kind);
    json out = report_to_json(report);

    std::printf("kind: %s\n", to_string(kind).c_str());
    for (const assumption_check& c : report.items)
        std::printf("  [%s] %-32s %.12g %s %.12g\n", c.ok ? "ok" : "FAIL", c.name.c_str(), c.lhs,
                    c.strict ? "<" : "<=", c.rhs);
    std::printf("overall: %s\n", report.overall ? "pass" : "fail");

    const double eps = epsilon.value_or(job->epsilon.value_or(0.0));
    if (eps > 0.0 && kind != bound_kind::negative_similarity_failure) {
        try {
            bound_report bounds;
            switch (kind) {
                case bound_kind::orthonormal_stall: bounds = stall_bounds_orthonormal(sc, eps); break;
                case bound_kind::negative_similarity_stall:
                    bounds = stall_bounds_negative_similarity(sc, eps);
                    break;
                default: bounds = convergence_bounds_positive_similarity(sc, eps); break;
            }
            json jb;
            jb["exponent"] = bounds.exponent;
            if (bounds.lower_bound_t_star) jb["lower_bound_t_star"] = *bounds.lower_bound_t_star;
            if (bounds.upper_bound_t_star) jb["upper_bound_t_star"] = *bounds.upper_bound_t_star;
            if (bounds.upper_bound_t_nomed) jb["upper_bound_t_nomed"] = *bounds.upper_bound_t_nomed;
            if (bounds.terminal_prob_lower) jb["terminal_prob_lower"] = *bounds.terminal_prob_lower;
            if (bounds.similarity_condition) jb["similarity_condition"] = *bounds.similarity_condition;
            if (bounds.v_truth_ceiling) jb["v_truth_ceiling"] = *bounds.v_truth_ceiling;
            jb["a_star_near_zero"] = bounds.a_star_near_zero;
            out["bounds"] = jb;
            std::printf("bounds (epsilon=%g):\n%s\n", eps, jb.dump(2).c_str());
        } catch (const assumption_failure& e) {
            out["bounds_refused"] = e.what();
            std::printf("bounds refused: %s\n", e.what());
        }
    }
    if (kind == bound_kind::negative_similarity_failure && report.overall) {
        const failure_check_result fc = negative_similarity_failure_check(sc);
        out["predicted_v_truth_ceiling"] = *fc.v_truth_ceiling;
        std::printf("predicted: v_truth stays below %.12g\n", *fc.v_truth_ceiling);
    }
    if (!out_path.empty()) write_json_atomic(out, out_path);
    return report.overall ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic bandit laboratory for proxy-reward policy gradient dynamics"};
    app.require_subcommand(1);

    std::string config_path, out_dir, out_path, dataset_path, values_path, kind_name;
    std::optional<std::uint64_t> seed_override;
    std::optional<double> epsilon;

    CLI::App* simulate = app.add_subcommand("simulate", "run a single scenario and export trajectories");
    simulate->add_option("--config", config_path, "scenario config file")->required();
    simulate->add_option("--out", out_dir, "output directory")->required();
    simulate->add_option("--seed", seed_override, "override the scenario seed");

    CLI::App* sweep = app.add_subcommand("sweep", "run a pi0(star) sweep and export hitting times");
    sweep->add_option("--config", config_path, "sweep config file")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();

    CLI::App* metrics = app.add_subcommand("metrics", "evaluate ranking-accuracy variants on a dataset");
    metrics->add_option("--dataset", dataset_path, "preference dataset file")->required();
    metrics->add_option("--values", values_path, "value-estimate file")->required();
    metrics->add_option("--out", out_path, "output JSON file")->required();

    CLI::App* check = app.add_subcommand("check", "evaluate assumptions and bounds for a scenario");
    check->add_option("--config", config_path, "scenario config file")->required();
    check->add_option("--kind", kind_name, "bound kind (default: inferred from geometry)");
    check->add_option("--epsilon", epsilon, "hitting-time level for bound evaluation");
    check->add_option("--out", out_path, "optional JSON report file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir, seed_override);
        if (sweep->parsed()) return cmd_sweep(config_path, out_dir);
        if (metrics->parsed()) return cmd_metrics(dataset_path, values_path, out_path);
        if (check->parsed()) return cmd_check(config_path, kind_name, epsilon, out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "rewardlab: error: %s\n", e.what());
        return 1;
    }
    return 0;
}
