#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fpx/positions.hpp"

namespace fpx {

/// Arc distance on the circle of circumference 1.
inline double circ_dist(double x, double y) {
    double d = x > y ? x - y : y - x;
    return d > 1.0 - d ? 1.0 - d : d;
}

/// Immutable circular random geometric graph: inclusive connection rule
/// d(x_i,x_j) <= r realized as contiguous windows on the sorted circular
/// order. Built in O(n log n); neighbor-degree sums answered in O(1) via
/// prefix sums over the doubled degree array. Edge lists are never stored.
class CircularRGG {
  public:
    CircularRGG(NodePositions p, double r);

    std::size_t size() const { return pos_.size(); }
    double radius() const { return radius_; }
    const NodePositions& positions() const { return pos_; }

    /// Degree of node i (original id order).
    std::int64_t degree(std::size_t i) const { return degrees_[i]; }
    const std::vector<std::int64_t>& degrees() const { return degrees_; }
    std::int64_t total_degree() const { return degree_prefix_[pos_.size()]; }

    /// Sum of neighbor degrees of node i, exact, O(1).
    std::int64_t neighbor_degree_sum(std::size_t i) const;

    /// Neighbor arc of a sorted rank: doubled-array indices [lo, lo+len),
    /// len <= n, containing the center slot. Exposed for contiguity tests.
    struct Window {
        std::uint32_t lo;
        std::uint32_t len;
    };
    Window window(std::size_t rank) const { return windows_[rank]; }
    std::uint32_t rank_of(std::size_t i) const { return rank_of_[i]; }
    const std::vector<double>& sorted_x() const { return sorted_x_; }
    const std::vector<std::int64_t>& degree_prefix() const { return degree_prefix_; }

    /// Materialized edge list (original ids, u < v, lexicographic). Intended
    /// for dumps and oracle comparisons; guarded to n <= 20000.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;

  private:
    NodePositions pos_;
    double radius_ = 0.0;
    std::vector<double> sorted_x_;          // positions in rank order
    std::vector<std::uint32_t> rank_of_;    // inverse of pos_.sorted_order
    std::vector<std::int64_t> degrees_;     // original id order
    std::vector<Window> windows_;           // per sorted rank
    std::vector<std::int64_t> degree_prefix_; // length 2n+1 over doubled ranks
};

/// Builds the graph. Throws RadiusOutOfRange unless 0 <= r <= 0.5.
CircularRGG build_graph(NodePositions p, double r);

/// Brute-force O(n^2) oracle: degrees plus canonical edge list
/// (original ids, u < v, sorted lexicographically). Inclusive threshold.
/// Throws TooLargeForOracle for n > 20000.
struct NaiveAdjacency {
    std::vector<std::int64_t> degrees;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};
NaiveAdjacency naive_adjacency(const NodePositions& p, double r);

inline std::int64_t neighbor_degree_sum(const CircularRGG& g, std::size_t i) {
    return g.neighbor_degree_sum(i);
}

} // namespace fpx
