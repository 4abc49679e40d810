#pragma once

#include <cstddef>
#include <vector>

namespace copulakit {

// Paired real observations, row order preserved.
struct Sample {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
};

}  // namespace copulakit
