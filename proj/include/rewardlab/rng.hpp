#pragma once

// Seeded random streams with a fixed, named generator. All sampling is
// derived from raw mt19937_64 output through the conversions below, so
// sequences are bit-identical across platforms and standard libraries.

#include <cstdint>
#include <random>
#include <string_view>

#include "rewardlab/types.hpp"

namespace rewardlab {

inline constexpr const char* rng_name = "mt19937_64/v1";

class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) using the top 53 bits.
    double next_uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Inverse-CDF draw walking the probabilities in index order.
    int next_categorical(const dvec& probs) {
        const double u = next_uniform();
        double cum = 0.0;
        const int n = static_cast<int>(probs.size());
        for (int i = 0; i < n; ++i) {
            cum += probs[static_cast<size_t>(i)];
            if (u < cum) return i;
        }
        return n - 1;  // guard against cum < 1 from rounding
    }

private:
    std::mt19937_64 engine_;
};

// FNV-1a over the run key, XORed into the base seed. Used to give each
// sweep value and replicate its own stream.
inline std::uint64_t derive_stream_seed(std::uint64_t base, std::string_view run_key) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : run_key) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return base ^ h;
}

}  // namespace rewardlab
