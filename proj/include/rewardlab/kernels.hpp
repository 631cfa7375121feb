#pragma once

// Inner loops over the output set, in two lanes:
//
//   kernels::serial   - plain loops, the reference implementation
//   kernels::parallel - OpenMP over fixed-size blocks
//
// The parallel lane accumulates per-block partial sums and combines them
// in block order, so its result depends only on the input, never on the
// thread count. For inputs of at most one block the two lanes perform
// the same additions in the same order and agree bitwise.
//
// The unqualified functions below dispatch by problem size; everything
// above this header (core, dynamics, metrics) goes through them.

#include <cstddef>

#include "rewardlab/types.hpp"

namespace rewardlab::kernels {

inline constexpr int block_size = 4096;
inline constexpr int parallel_threshold = 8192;

namespace serial {

double sum(const double* x, int n);
double dot(const double* a, const double* b, int n);
double max(const double* x, int n);
// logits[y] = <phi(y), theta>
void logits(const feature_set& fs, const dvec& theta, dvec& out);
// in place: x[i] <- exp(x[i] - max) / sum, with max-logit subtraction
void softmax_in_place(dvec& x);
// out[d] = sum_y w[y] * phi(y)[d]
void weighted_feature_sum(const feature_set& fs, const dvec& w, dvec& out);
// sum_y p[y] * (r[y] - v)^2
double centered_second_moment(const dvec& p, const dvec& r, double v);
double half_l1_distance(const dvec& p, const dvec& q);

}  // namespace serial

namespace parallel {

double sum(const double* x, int n);
double dot(const double* a, const double* b, int n);
double max(const double* x, int n);
void logits(const feature_set& fs, const dvec& theta, dvec& out);
void softmax_in_place(dvec& x);
void weighted_feature_sum(const feature_set& fs, const dvec& w, dvec& out);
double centered_second_moment(const dvec& p, const dvec& r, double v);
double half_l1_distance(const dvec& p, const dvec& q);

}  // namespace parallel

double sum(const double* x, int n);
double dot(const double* a, const double* b, int n);
double max(const double* x, int n);
void logits(const feature_set& fs, const dvec& theta, dvec& out);
void softmax_in_place(dvec& x);
void weighted_feature_sum(const feature_set& fs, const dvec& w, dvec& out);
double centered_second_moment(const dvec& p, const dvec& r, double v);
double half_l1_distance(const dvec& p, const dvec& q);

inline double sum(const dvec& x) { return sum(x.data(), static_cast<int>(x.size())); }
inline double dot(const dvec& a, const dvec& b) { return dot(a.data(), b.data(), static_cast<int>(a.size())); }

}  // namespace rewardlab::kernels
