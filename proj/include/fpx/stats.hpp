#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpx/rgg.hpp"

namespace fpx {

/// Friendship paradox of one graph: per-node indices, their average, and the
/// isolated-node count. f_n >= 0 always; zero exactly for regular graphs.
struct ParadoxResult {
    std::vector<double> delta; // per-node friendship index, original id order
    double f_n = 0.0;
    std::size_t n_isolated = 0;
};

/// Friendship index of node i: (sum of neighbor degrees)/d_i - d_i,
/// and exactly 0 when d_i = 0. Numerator and d_i are exact integers; the
/// only rounding is the final division.
double friendship_index(const CircularRGG& g, std::size_t i);

/// Average friendship index over all nodes, O(n) via the graph's prefix
/// sums. Deltas are summed in sorted-rank order with compensated summation.
ParadoxResult friendship_paradox(const CircularRGG& g);

/// Statistic from raw per-node (degree, neighbor-degree-sum) pairs. The
/// definition applies to any graph, not just geometric ones; this form backs
/// the closed-form test fixtures (stars, arbitrary regular graphs). Entries
/// are consumed in the order given.
ParadoxResult friendship_paradox(std::span<const std::int64_t> degrees,
                                 std::span<const std::int64_t> neighbor_degree_sums);

} // namespace fpx
