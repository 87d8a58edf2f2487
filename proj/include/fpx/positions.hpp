#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fpx {

/// n points on the unit circle [0,1) together with their sorting permutation.
/// An input of exactly 1.0 is reduced to 0.0; anything else outside [0,1] is
/// rejected.
struct NodePositions {
    std::vector<double> x;                   // original order
    std::vector<std::uint32_t> sorted_order; // sorted_order[k] = original index of k-th smallest

    NodePositions() = default;

    explicit NodePositions(std::vector<double> xs) : x(std::move(xs)) {
        for (double& v : x) {
            if (v == 1.0) v = 0.0;
            if (!(v >= 0.0 && v < 1.0))
                throw std::invalid_argument("NodePositions: coordinate outside [0,1)");
        }
        sorted_order.resize(x.size());
        std::iota(sorted_order.begin(), sorted_order.end(), 0u);
        std::sort(sorted_order.begin(), sorted_order.end(),
                  [&](std::uint32_t a, std::uint32_t b) {
                      return x[a] < x[b] || (x[a] == x[b] && a < b);
                  });
    }

    std::size_t size() const { return x.size(); }
};

} // namespace fpx
