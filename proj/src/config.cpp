#include "rewardlab/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "rewardlab/core.hpp"

namespace rewardlab {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& path, const std::string& message) {
    throw std::runtime_error("config error at " + path + ": " + message);
}

std::string format(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void reject_unknown_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
        if (allowed.find(key) == allowed.end()) config_error(path + "." + key, "unknown key");
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) config_error(path + "." + key, "missing required key");
    return *it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) config_error(path, "expected a number");
    return v.get<double>();
}

long long as_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) config_error(path, "expected an integer");
    return v.get<long long>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) config_error(path, "expected a string");
    return v.get<std::string>();
}

dvec as_dvec(const json& v, const std::string& path) {
    if (!v.is_array()) config_error(path, "expected an array of numbers");
    dvec out;
    out.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

scenario parse_scenario(const json& obj, const std::string& path) {
    if (!obj.is_object()) config_error(path, "expected an object");
    reject_unknown_keys(obj, path,
                        {"label", "seed", "features", "rewards", "structure_on", "initial_probs",
                         "initial_theta"});

    scenario sc;
    sc.label = error_label_from_string(as_string(require(obj, path, "label"), path + ".label"));
    sc.seed = static_cast<std::uint64_t>(as_integer(require(obj, path, "seed"), path + ".seed"));

    const json& feat = require(obj, path, "features");
    if (!feat.is_object()) config_error(path + ".features", "expected an object");
    reject_unknown_keys(feat, path + ".features", {"dim", "vectors"});
    const int dim = static_cast<int>(as_integer(require(feat, path + ".features", "dim"), path + ".features.dim"));
    const json& vecs = require(feat, path + ".features", "vectors");
    if (!vecs.is_array()) config_error(path + ".features.vectors", "expected an array");
    std::vector<dvec> vectors;
    for (size_t i = 0; i < vecs.size(); ++i)
        vectors.push_back(as_dvec(vecs[i], path + ".features.vectors[" + std::to_string(i) + "]"));
    sc.features = make_feature_set(dim, std::move(vectors));

    const json& rew = require(obj, path, "rewards");
    if (!rew.is_object()) config_error(path + ".rewards", "expected an object");
    reject_unknown_keys(rew, path + ".rewards", {"proxy", "ground_truth"});
    sc.rewards = make_reward_table(as_dvec(require(rew, path + ".rewards", "proxy"), path + ".rewards.proxy"),
                                   as_dvec(require(rew, path + ".rewards", "ground_truth"),
                                           path + ".rewards.ground_truth"));

    const std::string structure_on =
        obj.contains("structure_on") ? as_string(obj["structure_on"], path + ".structure_on") : "ground_truth";
    if (structure_on == "proxy")
        sc.structure_on_proxy = true;
    else if (structure_on != "ground_truth")
        config_error(path + ".structure_on", "expected 'ground_truth' or 'proxy'");
    try {
        sc.structure = structured_reward_spec::from_rewards(sc.structured_rewards());
    } catch (const std::invalid_argument&) {
        sc.structure.reset();  // degenerate reward shape; checks will reject later if needed
    }

    const bool has_probs = obj.contains("initial_probs");
    const bool has_theta = obj.contains("initial_theta");
    if (!has_probs && !has_theta)
        config_error(path, "one of initial_probs or initial_theta is required");
    if (has_theta) sc.initial_theta = as_dvec(obj["initial_theta"], path + ".initial_theta");
    if (has_probs) {
        sc.initial_probs = as_dvec(obj["initial_probs"], path + ".initial_probs");
        if (has_theta) {
            const dvec derived = softmax_probs(sc.features, policy_params{*sc.initial_theta});
            for (size_t i = 0; i < derived.size(); ++i)
                if (std::abs(derived[i] - sc.initial_probs[i]) > 1e-9)
                    config_error(path, "initial_probs disagree with softmax(initial_theta)");
        }
    } else {
        sc.initial_probs = softmax_probs(sc.features, policy_params{*sc.initial_theta});
    }
    sc.validate();
    return sc;
}

json scenario_to_json(const scenario& sc) {
    json obj;
    obj["label"] = to_string(sc.label);
    obj["seed"] = sc.seed;
    obj["features"] = json{{"dim", sc.features.dim}, {"vectors", sc.features.vectors}};
    obj["rewards"] = json{{"proxy", sc.rewards.proxy}, {"ground_truth", sc.rewards.ground_truth}};
    obj["structure_on"] = sc.structure_on_proxy ? "proxy" : "ground_truth";
    obj["initial_probs"] = sc.initial_probs;
    if (sc.initial_theta) obj["initial_theta"] = *sc.initial_theta;
    return obj;
}

integrator_config parse_integrator(const json& obj, const std::string& path) {
    if (!obj.is_object()) config_error(path, "expected an object");
    reject_unknown_keys(obj, path, {"method", "step_size", "max_steps", "record_every"});
    integrator_config cfg;
    cfg.method = integration_method_from_string(as_string(require(obj, path, "method"), path + ".method"));
    cfg.step_size = as_number(require(obj, path, "step_size"), path + ".step_size");
    cfg.max_steps = as_integer(require(obj, path, "max_steps"), path + ".max_steps");
    if (obj.contains("record_every"))
        cfg.record_every = as_integer(obj["record_every"], path + ".record_every");
    cfg.validate();
    return cfg;
}

json integrator_to_json(const integrator_config& cfg) {
    return json{{"method", to_string(cfg.method)},
                {"step_size", cfg.step_size},
                {"max_steps", cfg.max_steps},
                {"record_every", cfg.record_every}};
}

parsed_config parse_root(const json& root, const std::string& origin) {
    if (!root.is_object()) config_error(origin, "top-level config must be an object");
    const long long version = as_integer(require(root, origin, "schema_version"), origin + ".schema_version");
    if (version != config_schema_version)
        config_error(origin + ".schema_version",
                     "version " + std::to_string(version) + " does not match supported version " +
                         std::to_string(config_schema_version));
    const std::string kind = as_string(require(root, origin, "kind"), origin + ".kind");

    if (kind == "scenario") {
        reject_unknown_keys(root, origin,
                            {"schema_version", "kind", "scenario", "integrator", "optimize", "estimator",
                             "epsilon", "stop_when_v_truth_at_least"});
        simulation_job job;
        job.sc = parse_scenario(require(root, origin, "scenario"), origin + ".scenario");
        job.integrator = parse_integrator(require(root, origin, "integrator"), origin + ".integrator");
        if (root.contains("optimize")) {
            const std::string opt = as_string(root["optimize"], origin + ".optimize");
            if (opt == "proxy")
                job.optimize = reward_choice::proxy;
            else if (opt == "ground_truth")
                job.optimize = reward_choice::ground_truth;
            else if (opt == "both")
                job.optimize_both = true;
            else
                config_error(origin + ".optimize", "expected 'proxy', 'ground_truth' or 'both'");
        }
        if (root.contains("estimator"))
            job.estimator = estimator_kind_from_string(as_string(root["estimator"], origin + ".estimator"));
        if (root.contains("epsilon")) job.epsilon = as_number(root["epsilon"], origin + ".epsilon");
        if (root.contains("stop_when_v_truth_at_least"))
            job.stop_when_v_truth_at_least =
                as_number(root["stop_when_v_truth_at_least"], origin + ".stop_when_v_truth_at_least");
        return job;
    }
    if (kind == "sweep") {
        reject_unknown_keys(root, origin,
                            {"schema_version", "kind", "base", "integrator", "swept", "values", "epsilon",
                             "replicates", "estimator"});
        sweep_spec spec;
        spec.base = parse_scenario(require(root, origin, "base"), origin + ".base");
        spec.integrator = parse_integrator(require(root, origin, "integrator"), origin + ".integrator");
        spec.swept_param = as_string(require(root, origin, "swept"), origin + ".swept");
        if (spec.swept_param != "pi0_star")
            config_error(origin + ".swept", "only 'pi0_star' can be swept");
        spec.values = as_dvec(require(root, origin, "values"), origin + ".values");
        if (spec.values.empty()) config_error(origin + ".values", "value list must be nonempty");
        for (double v : spec.values)
            if (!(v > 0.0) || !(v < 0.5))
                config_error(origin + ".values", "swept value " + format(v) + " outside (0, 0.5)");
        spec.epsilon = as_number(require(root, origin, "epsilon"), origin + ".epsilon");
        if (root.contains("replicates")) {
            spec.replicates = static_cast<int>(as_integer(root["replicates"], origin + ".replicates"));
            if (spec.replicates < 1) config_error(origin + ".replicates", "must be >= 1");
        }
        if (root.contains("estimator"))
            spec.estimator = estimator_kind_from_string(as_string(root["estimator"], origin + ".estimator"));
        return spec;
    }
    if (kind == "metrics") {
        reject_unknown_keys(root, origin, {"schema_version", "kind", "dataset", "values"});
        metrics_job job;
        job.dataset_path = as_string(require(root, origin, "dataset"), origin + ".dataset");
        job.values_path = as_string(require(root, origin, "values"), origin + ".values");
        return job;
    }
    config_error(origin + ".kind", "expected 'scenario', 'sweep' or 'metrics'");
}

}  // namespace

std::string to_string(estimator_kind e) { return e == estimator_kind::exact ? "exact" : "reinforce"; }

estimator_kind estimator_kind_from_string(const std::string& s) {
    if (s == "exact") return estimator_kind::exact;
    if (s == "reinforce") return estimator_kind::reinforce;
    throw std::invalid_argument("unknown estimator: " + s);
}

parsed_config parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

parsed_config parse_config_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("config error at " + origin + ": " + e.what());
    }
    return parse_root(root, origin);
}

std::string serialize_config(const parsed_config& config) {
    json root;
    root["schema_version"] = config_schema_version;
    if (const auto* job = std::get_if<simulation_job>(&config)) {
        root["kind"] = "scenario";
        root["scenario"] = scenario_to_json(job->sc);
        root["integrator"] = integrator_to_json(job->integrator);
        root["optimize"] = job->optimize_both
                               ? "both"
                               : (job->optimize == reward_choice::proxy ? "proxy" : "ground_truth");
        root["estimator"] = to_string(job->estimator);
        if (job->epsilon) root["epsilon"] = *job->epsilon;
        if (job->stop_when_v_truth_at_least)
            root["stop_when_v_truth_at_least"] = *job->stop_when_v_truth_at_least;
    } else if (const auto* spec = std::get_if<sweep_spec>(&config)) {
        root["kind"] = "sweep";
        root["base"] = scenario_to_json(spec->base);
        root["integrator"] = integrator_to_json(spec->integrator);
        root["swept"] = spec->swept_param;
        root["values"] = spec->values;
        root["epsilon"] = spec->epsilon;
        root["replicates"] = spec->replicates;
        root["estimator"] = to_string(spec->estimator);
    } else {
        const auto& job = std::get<metrics_job>(config);
        root["kind"] = "metrics";
        root["dataset"] = job.dataset_path;
        root["values"] = job.values_path;
    }
    return root.dump(2) + "\n";
}

scenario scenario_from_json_text(const std::string& text) {
    json obj;
    try {
        obj = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("scenario parse error: ") + e.what());
    }
    return parse_scenario(obj, "$");
}

std::string scenario_to_json_text(const scenario& sc) { return scenario_to_json(sc).dump(2) + "\n"; }

}  // namespace rewardlab
