#pragma once

#include <cstdint>
#include <random>

namespace copulakit {

// Seeded random stream with hand-rolled variate transforms so that output is
// reproducible bit-for-bit across standard-library implementations. Streams
// for sub-tasks are derived by splitmix64 key mixing, never by sharing.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    static std::uint64_t mix_key(std::uint64_t key);

    // Key for (master, a, b, c); the documented splittable scheme.
    static std::uint64_t derive_key(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                    std::uint64_t c = 0);

    static RngStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0);

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1).
    double uniform_open() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double exponential();
    double normal();
    double gamma(double shape);

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace copulakit
