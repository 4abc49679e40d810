#include "copulakit/rng.hpp"

#include <cmath>
#include <numbers>

namespace copulakit {

std::uint64_t RngStream::mix_key(std::uint64_t key) {
    key += 0x9e3779b97f4a7c15ull;
    key = (key ^ (key >> 30)) * 0xbf58476d1ce4e5b9ull;
    key = (key ^ (key >> 27)) * 0x94d049bb133111ebull;
    return key ^ (key >> 31);
}

std::uint64_t RngStream::derive_key(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c) {
    std::uint64_t key = mix_key(master);
    key = mix_key(key ^ a);
    key = mix_key(key ^ b);
    key = mix_key(key ^ c);
    return key;
}

RngStream RngStream::derive(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) {
    return RngStream(derive_key(master, a, b, c));
}

double RngStream::exponential() { return -std::log1p(-uniform()); }

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double a = 2.0 * std::numbers::pi * uniform_open();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double RngStream::gamma(double shape) {
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform_open(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace copulakit
