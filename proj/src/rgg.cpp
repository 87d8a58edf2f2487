#include "fpx/rgg.hpp"

#include <algorithm>

#include "fpx/errors.hpp"

namespace fpx {

CircularRGG::CircularRGG(NodePositions p, double r) : pos_(std::move(p)), radius_(r) {
    if (!(r >= 0.0 && r <= 0.5))
        throw RadiusOutOfRange("build_graph: radius must lie in [0, 0.5]");
    const std::size_t n = pos_.size();
    sorted_x_.resize(n);
    rank_of_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        sorted_x_[k] = pos_.x[pos_.sorted_order[k]];
        rank_of_[pos_.sorted_order[k]] = static_cast<std::uint32_t>(k);
    }
    degrees_.assign(n, 0);
    windows_.resize(n);
    degree_prefix_.assign(2 * n + 1, 0);
    if (n == 0) return;

    // Scans run over the doubled rank space [i+1, i+n). The predicates
    // evaluate per branch exactly the floating-point expressions the naive
    // oracle evaluates (direct gap <= r, or wrapped gap 1 - d <= r), so the
    // two paths agree even on exact-tie inputs. Forward truth is a prefix in
    // k and eases as i grows; backward truth is a suffix and tightens, so
    // both pointers only ever advance.
    auto fwd_pred = [&](std::size_t i, std::size_t k) {
        return k < n ? sorted_x_[k] - sorted_x_[i] <= r
                     : 1.0 - (sorted_x_[i] - sorted_x_[k - n]) <= r;
    };
    auto bwd_pred = [&](std::size_t i, std::size_t k) {
        return k < n ? 1.0 - (sorted_x_[k] - sorted_x_[i]) <= r
                     : sorted_x_[i] - sorted_x_[k - n] <= r;
    };
    std::vector<std::uint32_t> fwd(n), bwd(n);
    {
        std::size_t hi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (hi < i) hi = i;
            while (hi + 1 <= i + n - 1 && fwd_pred(i, hi + 1)) ++hi;
            fwd[i] = static_cast<std::uint32_t>(hi - i);
        }
        std::size_t lo = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (lo < i + 1) lo = i + 1;
            while (lo <= i + n - 1 && !bwd_pred(i, lo)) ++lo;
            bwd[i] = static_cast<std::uint32_t>(i + n - lo);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        // A pair at exactly antipodal distance satisfies both reaches once r
        // hits 0.5; it is one edge, so the count is clamped at n-1.
        std::uint64_t deg = static_cast<std::uint64_t>(fwd[i]) + bwd[i];
        if (deg > n - 1) deg = n - 1;
        degrees_[pos_.sorted_order[i]] = static_cast<std::int64_t>(deg);

        // Window anchored at the furthest backward neighbor, normalized into
        // [0, n); spans deg+1 doubled ranks including the center slot.
        std::uint32_t len = static_cast<std::uint32_t>(deg) + 1;
        std::size_t anchor = (i + n - bwd[i]) % n;
        if (len >= n) {
            len = static_cast<std::uint32_t>(n);
            anchor = i;
        }
        windows_[i] = Window{static_cast<std::uint32_t>(anchor), len};
    }

    for (std::size_t k = 0; k < 2 * n; ++k)
        degree_prefix_[k + 1] = degree_prefix_[k] + degrees_[pos_.sorted_order[k % n]];
}

std::int64_t CircularRGG::neighbor_degree_sum(std::size_t i) const {
    const Window w = windows_[rank_of_[i]];
    return degree_prefix_[w.lo + w.len] - degree_prefix_[w.lo] - degrees_[i];
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> CircularRGG::edges() const {
    const std::size_t n = pos_.size();
    if (n > 20000)
        throw TooLargeForOracle("edges: refusing to materialize for n > 20000");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::size_t rank = 0; rank < n; ++rank) {
        const Window w = windows_[rank];
        const std::uint32_t self = pos_.sorted_order[rank];
        for (std::uint32_t k = w.lo; k < w.lo + w.len; ++k) {
            if (k % n == rank) continue; // center slot
            const std::uint32_t other = pos_.sorted_order[k % n];
            if (self < other) out.emplace_back(self, other);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CircularRGG build_graph(NodePositions p, double r) { return CircularRGG(std::move(p), r); }

NaiveAdjacency naive_adjacency(const NodePositions& p, double r) {
    if (!(r >= 0.0 && r <= 0.5))
        throw RadiusOutOfRange("naive_adjacency: radius must lie in [0, 0.5]");
    const std::size_t n = p.size();
    if (n > 20000)
        throw TooLargeForOracle("naive_adjacency: n > 20000");
    NaiveAdjacency out;
    out.degrees.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (circ_dist(p.x[i], p.x[j]) <= r) {
                ++out.degrees[i];
                ++out.degrees[j];
                out.edges.emplace_back(i, j);
            }
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

} // namespace fpx
