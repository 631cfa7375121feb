#pragma once

// Sweeps over the initial probability of the best output, hitting-time
// collection, bound evaluation, and the log-log scaling fit.

#include <optional>
#include <string>

#include "rewardlab/config.hpp"

namespace rewardlab {

struct run_record {
    std::string label;
    double swept_value = 0.0;
    std::optional<double> t_hit_proxy;   // empty: not reached within horizon
    std::optional<double> t_hit_truth;
    std::optional<double> bound_lower;
    std::optional<double> bound_upper;
    std::optional<double> exponent;
    bool assumption_ok = false;
    std::uint64_t seed = 0;
    std::string integrator_desc;
    std::string version;
    std::string error;  // nonempty when this value's run failed
};

// Instantiates the base scenario at the given pi0(star): the mediocre
// output keeps its base probability, the rest of the mass is split
// uniformly over the bad outputs.
scenario instantiate_pi0_star(const scenario& base, double pi0_star);

// One record per swept value; per-value failures are recorded in the row
// and do not abort the sweep. Values may run concurrently.
std::vector<run_record> run_sweep(const sweep_spec& spec);

// columns: label,swept_value,t_hit_proxy,t_hit_truth,bound_lower,
//          bound_upper,exponent,assumption_ok,seed,integrator,version
// "not reached" is written as the marker string not_reached, absent
// bounds as n/a.
void write_sweep_csv(const std::vector<run_record>& records, const std::string& path);
std::vector<run_record> read_sweep_csv(const std::string& path);

void emit_plotdata(const trajectory& traj, const std::string& path);
void emit_plotdata(const std::vector<run_record>& records, const std::string& path);

enum class run_kind { proxy_run, truth_run };

struct scaling_fit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// Ordinary least squares on (log pi0_star, log t_hit). Any "not reached"
// record is an error instructing a longer horizon.
scaling_fit fit_scaling_exponent(const std::vector<run_record>& records, run_kind which);
scaling_fit fit_scaling_exponent(const dvec& pi0_values, const dvec& hit_times);

}  // namespace rewardlab
