#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <random>

#include "rewardlab/kernels.hpp"
#include "test_helpers.hpp"

using namespace rewardlab;
using namespace rewardlab::testing;

namespace {

bool bitwise_equal(const dvec& a, const dvec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("parallel reductions agree with the serial reference") {
    std::mt19937_64 rng(11);
    for (int n : {1, 3, 100, kernels::block_size, kernels::block_size + 1, 3 * kernels::block_size + 17}) {
        const dvec a = random_vector(rng, n);
        const dvec b = random_vector(rng, n);
        const double rel = 1e-13 * std::max(1.0, std::abs(kernels::serial::sum(a.data(), n)));
        CHECK(std::abs(kernels::parallel::sum(a.data(), n) - kernels::serial::sum(a.data(), n)) <=
              1e-12 + rel);
        CHECK(std::abs(kernels::parallel::dot(a.data(), b.data(), n) -
                       kernels::serial::dot(a.data(), b.data(), n)) <= 1e-11);
        CHECK(kernels::parallel::max(a.data(), n) == kernels::serial::max(a.data(), n));
        if (n <= kernels::block_size) {
            // one block performs the same additions in the same order
            CHECK(kernels::parallel::sum(a.data(), n) == kernels::serial::sum(a.data(), n));
            CHECK(kernels::parallel::dot(a.data(), b.data(), n) == kernels::serial::dot(a.data(), b.data(), n));
        }
    }
}

TEST_CASE("parallel softmax and moments agree with serial") {
    std::mt19937_64 rng(12);
    for (int n : {5, kernels::block_size + 13, 2 * kernels::block_size}) {
        dvec logits = random_vector(rng, n, 3.0);
        dvec serial_probs = logits;
        kernels::serial::softmax_in_place(serial_probs);
        dvec parallel_probs = logits;
        kernels::parallel::softmax_in_place(parallel_probs);
        for (int i = 0; i < n; ++i) CHECK(std::abs(serial_probs[i] - parallel_probs[i]) <= 1e-15);

        const dvec r = random_rewards(rng, n);
        const double v = kernels::serial::dot(serial_probs.data(), r.data(), n);
        CHECK(kernels::parallel::centered_second_moment(serial_probs, r, v) ==
              doctest::Approx(kernels::serial::centered_second_moment(serial_probs, r, v)).epsilon(1e-13));

        const dvec q = random_unit_simplex(rng, n);
        CHECK(kernels::parallel::half_l1_distance(serial_probs, q) ==
              doctest::Approx(kernels::serial::half_l1_distance(serial_probs, q)).epsilon(1e-13));
    }
}

TEST_CASE("parallel weighted feature sum agrees with serial") {
    std::mt19937_64 rng(13);
    for (int n : {7, kernels::block_size + 1, 2 * kernels::block_size + 999}) {
        const int dim = 9;
        const feature_set fs = random_features(rng, n, dim);
        const dvec w = random_vector(rng, n);
        dvec serial_out, parallel_out;
        kernels::serial::weighted_feature_sum(fs, w, serial_out);
        kernels::parallel::weighted_feature_sum(fs, w, parallel_out);
        for (int d = 0; d < dim; ++d)
            CHECK(serial_out[d] == doctest::Approx(parallel_out[d]).epsilon(1e-12));
    }
}

TEST_CASE("parallel results do not depend on the thread count") {
    std::mt19937_64 rng(14);
    const int n = 3 * kernels::block_size + 111;
    const dvec a = random_vector(rng, n);
    const dvec b = random_vector(rng, n);
    const feature_set fs = random_features(rng, n, 6);

    const int saved = omp_get_max_threads();
    dvec sums, dots;
    std::vector<dvec> feature_sums;
    for (int threads : {1, 2, 7}) {
        omp_set_num_threads(threads);
        sums.push_back(kernels::parallel::sum(a.data(), n));
        dots.push_back(kernels::parallel::dot(a.data(), b.data(), n));
        dvec out;
        kernels::parallel::weighted_feature_sum(fs, a, out);
        feature_sums.push_back(out);
    }
    omp_set_num_threads(saved);
    for (size_t i = 1; i < sums.size(); ++i) {
        CHECK(sums[i] == sums[0]);
        CHECK(dots[i] == dots[0]);
        CHECK(bitwise_equal(feature_sums[i], feature_sums[0]));
    }
}

TEST_CASE("dispatch picks the lane by problem size") {
    std::mt19937_64 rng(15);
    const int small = 64;
    const dvec a = random_vector(rng, small);
    CHECK(kernels::sum(a.data(), small) == kernels::serial::sum(a.data(), small));

    const int large = kernels::parallel_threshold + 5;
    const dvec c = random_vector(rng, large);
    CHECK(kernels::sum(c.data(), large) == kernels::parallel::sum(c.data(), large));
}
