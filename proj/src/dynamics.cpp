#include "rewardlab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "rewardlab/core.hpp"
#include "rewardlab/kernels.hpp"
#include "rewardlab/rng.hpp"

namespace rewardlab {

namespace {

// Above this output count the Gram matrix is not materialized and the
// stepper works in parameter space instead of logit space.
constexpr int gram_threshold = 512;

// State and derivative evaluation for gradient flow. Logits evolve as
// l' = Phi nabla V(theta); since logits are linear in theta, stepping in
// logit space with the same one-step method reproduces the theta-space
// iterates exactly. The coefficients c track theta = theta0 + Phi^T c.
class flow_state {
public:
    flow_state(const scenario& sc, const dvec& optimized)
        : fs_(sc.features), optimized_(optimized), n_(sc.features.count()) {
        if (sc.initial_theta)
            theta0_ = *sc.initial_theta;
        else
            theta0_ = solve_initial_params(fs_, sc.initial_probs).theta;
        kernels::logits(fs_, theta0_, logits_);
        coeffs_.assign(static_cast<size_t>(n_), 0.0);
        use_gram_ = n_ <= gram_threshold;
        if (use_gram_) {
            gram_.resize(static_cast<size_t>(n_) * static_cast<size_t>(n_));
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    gram_[static_cast<size_t>(i) * static_cast<size_t>(n_) + static_cast<size_t>(j)] =
                        fs_.inner(i, j);
        }
    }

    const dvec& logits() const { return logits_; }

    bool finite() const {
        for (double l : logits_)
            if (!std::isfinite(l)) return false;
        return true;
    }

    dvec probs() const { return softmax_from_logits(logits_); }

    dvec theta() const {
        dvec th = theta0_;
        dvec lift;
        kernels::weighted_feature_sum(fs_, coeffs_, lift);
        for (size_t d = 0; d < th.size(); ++d) th[d] += lift[d];
        return th;
    }

    void euler_step(double eta) {
        dvec dl, dc;
        derivative(logits_, dl, dc);
        axpy(eta, dl, logits_);
        axpy(eta, dc, coeffs_);
    }

    void rk4_step(double eta) {
        dvec k1l, k1c, k2l, k2c, k3l, k3c, k4l, k4c;
        derivative(logits_, k1l, k1c);
        dvec tmp = shifted(logits_, 0.5 * eta, k1l);
        derivative(tmp, k2l, k2c);
        tmp = shifted(logits_, 0.5 * eta, k2l);
        derivative(tmp, k3l, k3c);
        tmp = shifted(logits_, eta, k3l);
        derivative(tmp, k4l, k4c);
        const double w = eta / 6.0;
        for (size_t i = 0; i < logits_.size(); ++i) {
            logits_[i] += w * (k1l[i] + 2.0 * k2l[i] + 2.0 * k3l[i] + k4l[i]);
            coeffs_[i] += w * (k1c[i] + 2.0 * k2c[i] + 2.0 * k3c[i] + k4c[i]);
        }
    }

    // theta <- theta + eta * r(y) * (phi(y) - phibar); in logit space the
    // update direction is r(y) * (G e_y - G pi).
    void reinforce_step(double eta, int y, const dvec& probs) {
        dvec dir(probs.size());
        for (size_t i = 0; i < probs.size(); ++i) dir[i] = -probs[i];
        dir[static_cast<size_t>(y)] += 1.0;
        const double scale = eta * optimized_[static_cast<size_t>(y)];
        dvec dl;
        lift_to_logits(dir, dl);
        axpy(scale, dl, logits_);
        axpy(scale, dir, coeffs_);
    }

private:
    // dl = Phi Phi^T w, dc = w at the given logits, w = pi .* (r - V).
    void derivative(const dvec& logits, dvec& dl, dvec& dc) const {
        dc = logits;
        kernels::softmax_in_place(dc);
        const double v = kernels::dot(dc, optimized_);
        for (size_t i = 0; i < dc.size(); ++i) dc[i] *= optimized_[i] - v;
        lift_to_logits(dc, dl);
    }

    void lift_to_logits(const dvec& w, dvec& dl) const {
        dl.assign(static_cast<size_t>(n_), 0.0);
        if (use_gram_) {
            for (int i = 0; i < n_; ++i)
                dl[static_cast<size_t>(i)] =
                    kernels::serial::dot(gram_.data() + static_cast<size_t>(i) * static_cast<size_t>(n_),
                                         w.data(), n_);
        } else {
            dvec grad;
            kernels::weighted_feature_sum(fs_, w, grad);
            kernels::logits(fs_, grad, dl);
        }
    }

    static void axpy(double a, const dvec& x, dvec& y) {
        for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
    }

    static dvec shifted(const dvec& base, double a, const dvec& dir) {
        dvec out(base.size());
        for (size_t i = 0; i < base.size(); ++i) out[i] = base[i] + a * dir[i];
        return out;
    }

    const feature_set& fs_;
    dvec optimized_;
    int n_;
    dvec theta0_;
    dvec logits_;
    dvec coeffs_;
    bool use_gram_ = false;
    dvec gram_;
};

const dvec& pick_rewards(const scenario& sc, reward_choice choice) {
    return choice == reward_choice::proxy ? sc.rewards.proxy : sc.rewards.ground_truth;
}

}  // namespace

std::string to_string(integration_method m) {
    return m == integration_method::euler ? "euler" : "rk4";
}

integration_method integration_method_from_string(const std::string& s) {
    if (s == "euler") return integration_method::euler;
    if (s == "rk4") return integration_method::rk4;
    throw std::invalid_argument("unknown integration method: " + s);
}

void integrator_config::validate() const {
    if (!(step_size > 0.0)) throw std::invalid_argument("step_size must be positive");
    if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
    if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

std::string integrator_config::describe() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s eta=%g", to_string(method).c_str(), step_size);
    return buf;
}

dvec exact_gradient(const feature_set& fs, const policy_params& params, const dvec& rewards) {
    if (static_cast<int>(rewards.size()) != fs.count())
        throw std::invalid_argument("reward vector length does not match output count");
    const dvec probs = softmax_probs(fs, params);
    const double v = kernels::dot(probs, rewards);
    dvec w(probs.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = probs[i] * (rewards[i] - v);
    dvec grad;
    kernels::weighted_feature_sum(fs, w, grad);
    return grad;
}

double logit_derivative(const feature_set& fs, const policy_params& params, const dvec& rewards,
                        int output_index) {
    const int n = fs.count();
    if (output_index < 0 || output_index >= n)
        throw std::out_of_range("output index " + std::to_string(output_index) + " out of range");
    const dvec probs = softmax_probs(fs, params);
    const double v = kernels::dot(probs, rewards);
    const size_t y = static_cast<size_t>(output_index);
    const double own = probs[y] * (rewards[y] - v) * fs.inner(output_index, output_index);
    double cross = 0.0;
    for (int z = 0; z < n; ++z) {
        if (z == output_index) continue;
        const size_t zz = static_cast<size_t>(z);
        cross += probs[zz] * (rewards[zz] - v) * fs.inner(z, output_index);
    }
    return own + cross;
}

double probability_derivative(const feature_set& fs, const policy_params& params, const dvec& rewards,
                              int output_index) {
    const int n = fs.count();
    if (output_index < 0 || output_index >= n)
        throw std::out_of_range("output index " + std::to_string(output_index) + " out of range");
    const dvec probs = softmax_probs(fs, params);
    const dvec grad = exact_gradient(fs, params, rewards);
    dvec mean_feature;
    kernels::weighted_feature_sum(fs, probs, mean_feature);
    const dvec& phi = fs.vectors[static_cast<size_t>(output_index)];
    double inner = 0.0;
    for (int d = 0; d < fs.dim; ++d)
        inner += (phi[static_cast<size_t>(d)] - mean_feature[static_cast<size_t>(d)]) * grad[static_cast<size_t>(d)];
    return probs[static_cast<size_t>(output_index)] * inner;
}

dvec score_function_update(const feature_set& fs, const dvec& probs, const dvec& rewards, int sampled_output) {
    if (sampled_output < 0 || sampled_output >= fs.count())
        throw std::out_of_range("sampled output index out of range");
    dvec mean_feature;
    kernels::weighted_feature_sum(fs, probs, mean_feature);
    const dvec& phi = fs.vectors[static_cast<size_t>(sampled_output)];
    dvec update(static_cast<size_t>(fs.dim));
    const double r = rewards[static_cast<size_t>(sampled_output)];
    for (int d = 0; d < fs.dim; ++d)
        update[static_cast<size_t>(d)] = r * (phi[static_cast<size_t>(d)] - mean_feature[static_cast<size_t>(d)]);
    return update;
}

namespace {

// Shared record/stop/monotonicity bookkeeping for both run loops.
// Monotonicity of the optimized objective is checked between recorded
// points with an allowance of 1e-9 * step_size per elapsed step.
struct run_loop {
    run_loop(const scenario& sc, const dvec& optimized, const integrator_config& cfg, const flow_options& opts)
        : sc_(sc), optimized_(optimized), cfg_(cfg), opts_(opts) {}

    // Returns true when the run should stop (target reached).
    bool record(long long step, const flow_state& state) {
        if (!state.finite())
            throw std::runtime_error("integration produced a non-finite logit by step " + std::to_string(step));
        dvec p = state.probs();
        const double vp = kernels::dot(p, sc_.rewards.proxy);
        const double vt = kernels::dot(p, sc_.rewards.ground_truth);
        const double v_opt = kernels::dot(p, optimized_);
        if (!traj.steps.empty()) {
            const double allowance = 1e-9 * cfg_.step_size * static_cast<double>(step - traj.steps.back());
            if (v_opt < v_opt_prev_ - allowance) ++traj.v_decrease_warnings;
        }
        v_opt_prev_ = v_opt;
        traj.steps.push_back(step);
        traj.times.push_back(static_cast<double>(step) * cfg_.step_size);
        traj.v_proxy.push_back(vp);
        traj.v_truth.push_back(vt);
        traj.reward_variance_proxy.push_back(kernels::centered_second_moment(p, sc_.rewards.proxy, vp));
        traj.probs.push_back(std::move(p));
        if (opts_.record_params) traj.params_snapshots.push_back(state.theta());
        return opts_.stop_when_v_truth_at_least && vt >= *opts_.stop_when_v_truth_at_least;
    }

    void finish(long long steps_taken, bool stopped_early) {
        traj.total_steps = steps_taken;
        traj.stopped_early = stopped_early;
        if (traj.v_decrease_warnings > 0)
            std::fprintf(stderr,
                         "rewardlab: warning: optimized objective decreased beyond tolerance across %lld "
                         "recorded intervals (%s); consider a smaller step size\n",
                         traj.v_decrease_warnings, cfg_.describe().c_str());
    }

    trajectory traj;

private:
    const scenario& sc_;
    const dvec& optimized_;
    const integrator_config& cfg_;
    const flow_options& opts_;
    double v_opt_prev_ = 0.0;
};

}  // namespace

trajectory run_flow(const scenario& sc, reward_choice choice, const integrator_config& cfg,
                    const flow_options& opts) {
    sc.validate();
    cfg.validate();
    const dvec& optimized = pick_rewards(sc, choice);
    flow_state state(sc, optimized);
    run_loop loop(sc, optimized, cfg, opts);

    if (loop.record(0, state)) {
        loop.finish(0, true);
        return loop.traj;
    }
    const bool euler = cfg.method == integration_method::euler;
    long long step = 0;
    bool stopped = false;
    while (step < cfg.max_steps) {
        if (euler)
            state.euler_step(cfg.step_size);
        else
            state.rk4_step(cfg.step_size);
        ++step;
        if (step % cfg.record_every == 0 || step == cfg.max_steps) {
            if (loop.record(step, state)) {
                stopped = true;
                break;
            }
        }
    }
    loop.finish(step, stopped);
    return loop.traj;
}

trajectory run_reinforce(const scenario& sc, const integrator_config& cfg, std::uint64_t seed,
                         const flow_options& opts, reward_choice choice) {
    sc.validate();
    cfg.validate();
    const dvec& optimized = pick_rewards(sc, choice);
    flow_state state(sc, optimized);
    rng_stream rng(seed);
    run_loop loop(sc, optimized, cfg, opts);

    if (loop.record(0, state)) {
        loop.finish(0, true);
        return loop.traj;
    }
    long long step = 0;
    bool stopped = false;
    while (step < cfg.max_steps) {
        dvec p = state.probs();
        const int y = rng.next_categorical(p);
        state.reinforce_step(cfg.step_size, y, p);
        ++step;
        if (step % cfg.record_every == 0 || step == cfg.max_steps) {
            if (loop.record(step, state)) {
                stopped = true;
                break;
            }
        }
    }
    loop.finish(step, stopped);
    return loop.traj;
}

hitting_time_result hitting_time(const trajectory& traj, double epsilon, const scenario& sc) {
    const structured_reward_spec spec = structured_reward_spec::from_rewards(sc.rewards.ground_truth);
    if (!(epsilon > 0.0) || !(epsilon < spec.delta1))
        throw std::invalid_argument("epsilon must lie in (0, delta1)");
    hitting_time_result result;
    result.epsilon = epsilon;
    result.threshold = sc.rewards.ground_truth[static_cast<size_t>(spec.star_index)] - epsilon;
    if (traj.size() == 0) return result;

    if (traj.v_truth.front() >= result.threshold) {
        result.t_hit = traj.times.front();
        return result;
    }
    for (size_t k = 1; k < traj.size(); ++k) {
        if (traj.v_truth[k] >= result.threshold) {
            const double v0 = traj.v_truth[k - 1];
            const double v1 = traj.v_truth[k];
            const double t0 = traj.times[k - 1];
            const double t1 = traj.times[k];
            result.t_hit = v1 > v0 ? t0 + (result.threshold - v0) * (t1 - t0) / (v1 - v0) : t1;
            return result;
        }
    }
    return result;
}

tv_pair_result tv_divergence_pair(const scenario& sc, const integrator_config& cfg, double horizon) {
    sc.validate();
    cfg.validate();
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be nonnegative");
    flow_state proxy_state(sc, sc.rewards.proxy);
    flow_state truth_state(sc, sc.rewards.ground_truth);

    tv_pair_result result;
    auto record = [&](long long step, double t) {
        if (!proxy_state.finite() || !truth_state.finite())
            throw std::runtime_error("integration produced a non-finite logit by step " + std::to_string(step));
        const double d = tv_distance(proxy_state.probs(), truth_state.probs());
        result.times.push_back(t);
        result.tv.push_back(d);
        result.max_tv = std::max(result.max_tv, d);
    };
    record(0, 0.0);

    const long long steps = static_cast<long long>(std::ceil(horizon / cfg.step_size - 1e-12));
    const bool euler = cfg.method == integration_method::euler;
    for (long long step = 1; step <= steps; ++step) {
        if (euler) {
            proxy_state.euler_step(cfg.step_size);
            truth_state.euler_step(cfg.step_size);
        } else {
            proxy_state.rk4_step(cfg.step_size);
            truth_state.rk4_step(cfg.step_size);
        }
        if (step % cfg.record_every == 0 || step == steps)
            record(step, static_cast<double>(step) * cfg.step_size);
    }
    return result;
}

}  // namespace rewardlab
