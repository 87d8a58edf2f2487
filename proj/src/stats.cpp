#include "fpx/stats.hpp"

namespace fpx {

namespace {

// Kahan-compensated accumulator; summation error must stay well below the
// 1e-10 relative budget the cross-path equality tests rely on.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double delta_of(std::int64_t degree, std::int64_t nbr_sum) {
    if (degree == 0) return 0.0;
    return static_cast<double>(nbr_sum) / static_cast<double>(degree) -
           static_cast<double>(degree);
}

} // namespace

double friendship_index(const CircularRGG& g, std::size_t i) {
    return delta_of(g.degree(i), g.neighbor_degree_sum(i));
}

ParadoxResult friendship_paradox(const CircularRGG& g) {
    const std::size_t n = g.size();
    ParadoxResult res;
    res.delta.assign(n, 0.0);
    KahanSum acc;
    for (std::size_t rank = 0; rank < n; ++rank) {
        const std::size_t i = g.positions().sorted_order[rank];
        const std::int64_t d = g.degree(i);
        if (d == 0) {
            ++res.n_isolated;
            continue;
        }
        const double delta = delta_of(d, g.neighbor_degree_sum(i));
        res.delta[i] = delta;
        acc.add(delta);
    }
    res.f_n = n > 0 ? acc.sum / static_cast<double>(n) : 0.0;
    return res;
}

ParadoxResult friendship_paradox(std::span<const std::int64_t> degrees,
                                 std::span<const std::int64_t> neighbor_degree_sums) {
    const std::size_t n = degrees.size();
    ParadoxResult res;
    res.delta.assign(n, 0.0);
    KahanSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (degrees[i] == 0) {
            ++res.n_isolated;
            continue;
        }
        const double delta = delta_of(degrees[i], neighbor_degree_sums[i]);
        res.delta[i] = delta;
        acc.add(delta);
    }
    res.f_n = n > 0 ? acc.sum / static_cast<double>(n) : 0.0;
    return res;
}

} // namespace fpx
