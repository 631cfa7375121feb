#include "rewardlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "rewardlab/kernels.hpp"

namespace rewardlab {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

void validate_record(const output_record& rec, const std::string& id, const char* role) {
    if (rec.length < 1)
        throw std::invalid_argument("example " + id + ": " + role + " output has length < 1");
    if (!(rec.log_prob <= 0.0) || !std::isfinite(rec.log_prob))
        throw std::invalid_argument("example " + id + ": " + role + " log_prob must be finite and <= 0");
    if (!std::isfinite(rec.proxy_score) || !std::isfinite(rec.truth_score))
        throw std::invalid_argument("example " + id + ": " + role + " has a non-finite score");
}

double max_dispreferred_proxy(const preference_example& ex) {
    double m = neg_inf;
    for (const output_record& rec : ex.dispreferred) m = std::max(m, rec.proxy_score);
    return m;
}

// v_bar lookup by example id; duplicates and gaps are hard errors.
std::unordered_map<std::string, double> value_map(const preference_dataset& dataset,
                                                  const std::vector<value_estimate>& values) {
    std::unordered_map<std::string, double> map;
    map.reserve(values.size());
    for (const value_estimate& v : values) {
        if (v.n_samples < 1)
            throw std::invalid_argument("value estimate for " + v.example_id + " has n_samples < 1");
        if (!map.emplace(v.example_id, v.v_bar).second)
            throw std::invalid_argument("duplicate value estimate for example " + v.example_id);
    }
    for (const preference_example& ex : dataset)
        if (map.find(ex.example_id) == map.end())
            throw std::invalid_argument("missing value estimate for example " + ex.example_id);
    return map;
}

// indicator vector, plain (threshold = proxy(preferred)) or harm-aware
// (threshold = max{proxy(preferred), v_bar})
dvec indicators(const preference_dataset& dataset, const std::unordered_map<std::string, double>* values) {
    const int n = static_cast<int>(dataset.size());
    dvec ind(static_cast<size_t>(n));
#pragma omp parallel for schedule(static) if (n >= kernels::parallel_threshold)
    for (int i = 0; i < n; ++i) {
        const preference_example& ex = dataset[static_cast<size_t>(i)];
        double threshold = ex.preferred.proxy_score;
        if (values) threshold = std::max(threshold, values->at(ex.example_id));
        ind[static_cast<size_t>(i)] = max_dispreferred_proxy(ex) < threshold ? 1.0 : 0.0;
    }
    return ind;
}

// weights in log domain: lw_i = sum over the example's outputs of
// log_prob / length, normalized with log-sum-exp
dvec example_weights(const preference_dataset& dataset) {
    const size_t n = dataset.size();
    dvec lw(n);
    for (size_t i = 0; i < n; ++i) {
        const preference_example& ex = dataset[i];
        double acc = ex.preferred.log_prob / static_cast<double>(ex.preferred.length);
        for (const output_record& rec : ex.dispreferred)
            acc += rec.log_prob / static_cast<double>(rec.length);
        lw[i] = acc;
    }
    const double m = kernels::max(lw.data(), static_cast<int>(n));
    if (!std::isfinite(m))
        throw std::runtime_error("all example weights vanished; log-probabilities are degenerate");
    for (double& x : lw) x = std::exp(x - m);
    const double z = kernels::sum(lw);
    for (double& x : lw) x /= z;
    return lw;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double_field(const std::string& s, const std::string& context) {
    if (s == "-inf") return neg_inf;
    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": cannot parse number '" + s + "'");
    }
    if (pos != s.size()) throw std::runtime_error(context + ": trailing characters in number '" + s + "'");
    return value;
}

long long parse_int_field(const std::string& s, const std::string& context) {
    size_t pos = 0;
    long long value = 0;
    try {
        value = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error(context + ": cannot parse integer '" + s + "'");
    }
    if (pos != s.size()) throw std::runtime_error(context + ": trailing characters in integer '" + s + "'");
    return value;
}

}  // namespace

void validate_dataset(const preference_dataset& dataset) {
    if (dataset.empty()) throw std::invalid_argument("empty preference dataset");
    for (const preference_example& ex : dataset) {
        if (ex.dispreferred.empty())
            throw std::invalid_argument("example " + ex.example_id + " has no dispreferred outputs");
        validate_record(ex.preferred, ex.example_id, "preferred");
        double max_truth = neg_inf;
        for (size_t k = 0; k < ex.dispreferred.size(); ++k) {
            validate_record(ex.dispreferred[k], ex.example_id, "dispreferred");
            max_truth = std::max(max_truth, ex.dispreferred[k].truth_score);
        }
        if (!(ex.preferred.truth_score > max_truth))
            throw std::invalid_argument("example " + ex.example_id +
                                        " violates the label precondition: preferred truth score " +
                                        std::to_string(ex.preferred.truth_score) +
                                        " does not exceed every dispreferred truth score");
    }
}

double acc(const preference_dataset& dataset) {
    validate_dataset(dataset);
    const dvec ind = indicators(dataset, nullptr);
    return kernels::sum(ind) / static_cast<double>(dataset.size());
}

double hacc(const preference_dataset& dataset, const std::vector<value_estimate>& values) {
    validate_dataset(dataset);
    const auto map = value_map(dataset, values);
    const dvec ind = indicators(dataset, &map);
    return kernels::sum(ind) / static_cast<double>(dataset.size());
}

double weighted_variant(const preference_dataset& dataset, const std::vector<value_estimate>* values,
                        bool harm_aware) {
    validate_dataset(dataset);
    if (harm_aware && values == nullptr)
        throw std::invalid_argument("harm-aware weighted variant needs value estimates");
    std::unordered_map<std::string, double> map;
    if (harm_aware) map = value_map(dataset, *values);
    const dvec ind = indicators(dataset, harm_aware ? &map : nullptr);
    const dvec w = example_weights(dataset);
    dvec contributions(ind.size());
    for (size_t i = 0; i < ind.size(); ++i) contributions[i] = w[i] * ind[i];
    return kernels::sum(contributions);
}

value_estimate estimate_value(const std::string& example_id,
                              const std::function<double(rng_stream&)>& sampler, long long n_samples,
                              std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    rng_stream rng(seed);
    double acc = 0.0;
    for (long long i = 0; i < n_samples; ++i) acc += sampler(rng);
    return value_estimate{example_id, acc / static_cast<double>(n_samples), n_samples};
}

double spearman(const dvec& xs, const dvec& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("rank correlation inputs differ in length");
    const size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("rank correlation needs at least 2 points");

    auto ranks = [](const dvec& v) {
        const size_t n = v.size();
        std::vector<size_t> order(n);
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
        dvec rank(n);
        size_t i = 0;
        while (i < n) {
            size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // ranks are 1-based
            for (size_t k = i; k <= j; ++k) rank[order[k]] = avg;
            i = j + 1;
        }
        return rank;
    };

    auto constant = [](const dvec& v) {
        for (double x : v)
            if (x != v.front()) return false;
        return true;
    };
    if (constant(xs) || constant(ys))
        throw std::invalid_argument("rank correlation undefined for a constant input vector");

    const dvec rx = ranks(xs);
    const dvec ry = ranks(ys);
    double mean = 0.5 * static_cast<double>(n + 1);
    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = rx[i] - mean;
        const double dy = ry[i] - mean;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    return cov / std::sqrt(var_x * var_y);
}

double regret(const dvec& reward_increases, int chosen_index) {
    if (reward_increases.empty()) throw std::invalid_argument("empty reward-increase list");
    if (chosen_index < 0 || chosen_index >= static_cast<int>(reward_increases.size()))
        throw std::out_of_range("chosen index out of range");
    const double best = *std::max_element(reward_increases.begin(), reward_increases.end());
    if (!(best > 0.0))
        throw std::invalid_argument("regret undefined: largest reward increase is not positive");
    return 100.0 * (best - reward_increases[static_cast<size_t>(chosen_index)]) / best;
}

preference_dataset read_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file " + path);
    std::string line;
    if (!std::getline(in, line) || line != "example_id,role,proxy_score,truth_score,length,log_prob")
        throw std::runtime_error(path + ": bad or missing dataset header");

    struct partial {
        std::optional<output_record> preferred;
        std::vector<std::pair<long long, output_record>> dispreferred;
    };
    std::vector<std::string> order;
    std::unordered_map<std::string, partial> by_id;

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string context = path + ":" + std::to_string(line_no);
        const std::vector<std::string> f = split_line(line);
        if (f.size() != 6) throw std::runtime_error(context + ": expected 6 fields, got " + std::to_string(f.size()));
        output_record rec;
        rec.proxy_score = parse_double_field(f[2], context);
        rec.truth_score = parse_double_field(f[3], context);
        rec.length = parse_int_field(f[4], context);
        rec.log_prob = parse_double_field(f[5], context);

        auto it = by_id.find(f[0]);
        if (it == by_id.end()) {
            order.push_back(f[0]);
            it = by_id.emplace(f[0], partial{}).first;
        }
        if (f[1] == "preferred") {
            if (it->second.preferred)
                throw std::runtime_error(context + ": duplicate preferred output for example " + f[0]);
            it->second.preferred = rec;
        } else if (f[1].rfind("dispreferred_", 0) == 0) {
            const long long k = parse_int_field(f[1].substr(13), context);
            if (k < 1) throw std::runtime_error(context + ": dispreferred index must be >= 1");
            it->second.dispreferred.emplace_back(k, rec);
        } else {
            throw std::runtime_error(context + ": unknown role '" + f[1] + "'");
        }
    }

    preference_dataset dataset;
    dataset.reserve(order.size());
    for (const std::string& id : order) {
        partial& p = by_id[id];
        if (!p.preferred) throw std::runtime_error(path + ": example " + id + " has no preferred output");
        std::sort(p.dispreferred.begin(), p.dispreferred.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        preference_example ex;
        ex.example_id = id;
        ex.preferred = *p.preferred;
        for (size_t k = 0; k < p.dispreferred.size(); ++k) {
            if (p.dispreferred[k].first != static_cast<long long>(k + 1))
                throw std::runtime_error(path + ": example " + id + " dispreferred indices are not 1..K");
            ex.dispreferred.push_back(p.dispreferred[k].second);
        }
        dataset.push_back(std::move(ex));
    }
    validate_dataset(dataset);
    return dataset;
}

namespace {

void write_number(std::ostream& os, double x) {
    if (x == neg_inf) {
        os << "-inf";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    os << buf;
}

void write_record_line(std::ostream& os, const std::string& id, const std::string& role,
                       const output_record& rec) {
    os << id << ',' << role << ',';
    write_number(os, rec.proxy_score);
    os << ',';
    write_number(os, rec.truth_score);
    os << ',' << rec.length << ',';
    write_number(os, rec.log_prob);
    os << '\n';
}

}  // namespace

void write_dataset_file(const preference_dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file " + path);
    out << "example_id,role,proxy_score,truth_score,length,log_prob\n";
    for (const preference_example& ex : dataset) {
        write_record_line(out, ex.example_id, "preferred", ex.preferred);
        for (size_t k = 0; k < ex.dispreferred.size(); ++k)
            write_record_line(out, ex.example_id, "dispreferred_" + std::to_string(k + 1), ex.dispreferred[k]);
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<value_estimate> read_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open values file " + path);
    std::string line;
    if (!std::getline(in, line) || line != "example_id,v_bar,n_samples")
        throw std::runtime_error(path + ": bad or missing values header");
    std::vector<value_estimate> values;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string context = path + ":" + std::to_string(line_no);
        const std::vector<std::string> f = split_line(line);
        if (f.size() != 3) throw std::runtime_error(context + ": expected 3 fields, got " + std::to_string(f.size()));
        value_estimate v;
        v.example_id = f[0];
        v.v_bar = parse_double_field(f[1], context);
        v.n_samples = parse_int_field(f[2], context);
        values.push_back(std::move(v));
    }
    return values;
}

void write_values_file(const std::vector<value_estimate>& values, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write values file " + path);
    out << "example_id,v_bar,n_samples\n";
    for (const value_estimate& v : values) {
        out << v.example_id << ',';
        write_number(out, v.v_bar);
        out << ',' << v.n_samples << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

metrics_summary compute_all_metrics(const preference_dataset& dataset,
                                    const std::vector<value_estimate>& values) {
    metrics_summary s;
    s.acc = acc(dataset);
    s.acc_w = weighted_variant(dataset, nullptr, false);
    s.hacc = hacc(dataset, values);
    s.hacc_w = weighted_variant(dataset, &values, true);
    s.n_examples = static_cast<long long>(dataset.size());
    return s;
}

}  // namespace rewardlab
