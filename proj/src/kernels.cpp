#include "rewardlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rewardlab::kernels {

namespace serial {

double sum(const double* x, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x[i];
    return s;
}

double dot(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double max(const double* x, int n) {
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) m = std::max(m, x[i]);
    return m;
}

void logits(const feature_set& fs, const dvec& theta, dvec& out) {
    const int n = fs.count();
    out.resize(static_cast<size_t>(n));
    for (int y = 0; y < n; ++y)
        out[static_cast<size_t>(y)] = dot(fs.vectors[static_cast<size_t>(y)].data(), theta.data(), fs.dim);
}

void softmax_in_place(dvec& x) {
    const int n = static_cast<int>(x.size());
    const double m = max(x.data(), n);
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = std::exp(x[static_cast<size_t>(i)] - m);
    const double z = sum(x.data(), n);
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] /= z;
}

void weighted_feature_sum(const feature_set& fs, const dvec& w, dvec& out) {
    const int n = fs.count();
    out.assign(static_cast<size_t>(fs.dim), 0.0);
    for (int y = 0; y < n; ++y) {
        const double wy = w[static_cast<size_t>(y)];
        const dvec& phi = fs.vectors[static_cast<size_t>(y)];
        for (int d = 0; d < fs.dim; ++d) out[static_cast<size_t>(d)] += wy * phi[static_cast<size_t>(d)];
    }
}

double centered_second_moment(const dvec& p, const dvec& r, double v) {
    double s = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        const double a = r[i] - v;
        s += p[i] * a * a;
    }
    return s;
}

double half_l1_distance(const dvec& p, const dvec& q) {
    double s = 0.0;
    for (size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace serial

namespace parallel {

namespace {

inline int num_blocks(int n) { return (n + block_size - 1) / block_size; }

template <typename PerBlock>
double blocked_reduce(int n, double init, double (*combine)(double, double), PerBlock per_block) {
    const int nb = num_blocks(n);
    dvec partial(static_cast<size_t>(nb));
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        const int lo = b * block_size;
        const int hi = std::min(n, lo + block_size);
        partial[static_cast<size_t>(b)] = per_block(lo, hi);
    }
    double acc = init;
    for (int b = 0; b < nb; ++b) acc = combine(acc, partial[static_cast<size_t>(b)]);
    return acc;
}

double add(double a, double b) { return a + b; }
double take_max(double a, double b) { return a > b ? a : b; }

}  // namespace

double sum(const double* x, int n) {
    return blocked_reduce(n, 0.0, add, [x](int lo, int hi) { return serial::sum(x + lo, hi - lo); });
}

double dot(const double* a, const double* b, int n) {
    return blocked_reduce(n, 0.0, add, [a, b](int lo, int hi) { return serial::dot(a + lo, b + lo, hi - lo); });
}

double max(const double* x, int n) {
    return blocked_reduce(n, -std::numeric_limits<double>::infinity(), take_max,
                          [x](int lo, int hi) { return serial::max(x + lo, hi - lo); });
}

void logits(const feature_set& fs, const dvec& theta, dvec& out) {
    const int n = fs.count();
    out.resize(static_cast<size_t>(n));
#pragma omp parallel for schedule(static)
    for (int y = 0; y < n; ++y)
        out[static_cast<size_t>(y)] = serial::dot(fs.vectors[static_cast<size_t>(y)].data(), theta.data(), fs.dim);
}

void softmax_in_place(dvec& x) {
    const int n = static_cast<int>(x.size());
    const double m = max(x.data(), n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = std::exp(x[static_cast<size_t>(i)] - m);
    const double z = sum(x.data(), n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] /= z;
}

void weighted_feature_sum(const feature_set& fs, const dvec& w, dvec& out) {
    const int n = fs.count();
    const int nb = num_blocks(n);
    const size_t dim = static_cast<size_t>(fs.dim);
    std::vector<dvec> partial(static_cast<size_t>(nb), dvec(dim, 0.0));
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b) {
        dvec& acc = partial[static_cast<size_t>(b)];
        const int lo = b * block_size;
        const int hi = std::min(n, lo + block_size);
        for (int y = lo; y < hi; ++y) {
            const double wy = w[static_cast<size_t>(y)];
            const dvec& phi = fs.vectors[static_cast<size_t>(y)];
            for (size_t d = 0; d < dim; ++d) acc[d] += wy * phi[d];
        }
    }
    out.assign(dim, 0.0);
    for (int b = 0; b < nb; ++b)
        for (size_t d = 0; d < dim; ++d) out[d] += partial[static_cast<size_t>(b)][d];
}

double centered_second_moment(const dvec& p, const dvec& r, double v) {
    const double* pp = p.data();
    const double* rr = r.data();
    return blocked_reduce(static_cast<int>(p.size()), 0.0, add, [pp, rr, v](int lo, int hi) {
        double s = 0.0;
        for (int i = lo; i < hi; ++i) {
            const double a = rr[i] - v;
            s += pp[i] * a * a;
        }
        return s;
    });
}

double half_l1_distance(const dvec& p, const dvec& q) {
    const double* pp = p.data();
    const double* qq = q.data();
    return 0.5 * blocked_reduce(static_cast<int>(p.size()), 0.0, add, [pp, qq](int lo, int hi) {
        double s = 0.0;
        for (int i = lo; i < hi; ++i) s += std::abs(pp[i] - qq[i]);
        return s;
    });
}

}  // namespace parallel

double sum(const double* x, int n) {
    return n >= parallel_threshold ? parallel::sum(x, n) : serial::sum(x, n);
}

double dot(const double* a, const double* b, int n) {
    return n >= parallel_threshold ? parallel::dot(a, b, n) : serial::dot(a, b, n);
}

double max(const double* x, int n) {
    return n >= parallel_threshold ? parallel::max(x, n) : serial::max(x, n);
}

void logits(const feature_set& fs, const dvec& theta, dvec& out) {
    if (fs.count() >= parallel_threshold)
        parallel::logits(fs, theta, out);
    else
        serial::logits(fs, theta, out);
}

void softmax_in_place(dvec& x) {
    if (static_cast<int>(x.size()) >= parallel_threshold)
        parallel::softmax_in_place(x);
    else
        serial::softmax_in_place(x);
}

void weighted_feature_sum(const feature_set& fs, const dvec& w, dvec& out) {
    if (fs.count() >= parallel_threshold)
        parallel::weighted_feature_sum(fs, w, out);
    else
        serial::weighted_feature_sum(fs, w, out);
}

double centered_second_moment(const dvec& p, const dvec& r, double v) {
    return static_cast<int>(p.size()) >= parallel_threshold ? parallel::centered_second_moment(p, r, v)
                                                            : serial::centered_second_moment(p, r, v);
}

double half_l1_distance(const dvec& p, const dvec& q) {
    return static_cast<int>(p.size()) >= parallel_threshold ? parallel::half_l1_distance(p, q)
                                                            : serial::half_l1_distance(p, q);
}

}  // namespace rewardlab::kernels
