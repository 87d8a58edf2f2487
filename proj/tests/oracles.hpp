#pragma once

// Test-side oracles, independent of the library code paths they check:
// Bessel series family, trapezoid quadrature of periodic integrands,
// central finite differences, KS distance, and naive graph reductions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// I_m(z) = sum_k (z/2)^{2k+m} / (k! (k+m)!)
inline double bessel_i(int m, double z) {
    double term = 1.0;
    for (int j = 1; j <= m; ++j) term *= (z / 2.0) / j;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= (z / 2.0) * (z / 2.0) / (static_cast<double>(k) * (k + m));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Trapezoid over one period is spectrally accurate for smooth periodic
// integrands; used as the quadrature oracle for the defining I0 integral.
inline double bessel_i0_quad(double kappa, int points = 4096) {
    double sum = 0.0;
    for (int k = 0; k < points; ++k) {
        const double x = 2.0 * std::numbers::pi * k / points;
        sum += std::exp(kappa * std::cos(x));
    }
    return sum / points; // (1/2pi) * (2pi/points) * sum
}

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h, int order) {
    if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Kolmogorov-Smirnov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> sample,
                          const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double c = cdf(sample[i]);
        d = std::max(d, std::abs(c - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
    }
    return d;
}

// Neighbor degree sums straight off an edge list.
inline std::vector<std::int64_t> neighbor_sums_from_edges(
    std::size_t n, const std::vector<std::int64_t>& degrees,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::int64_t> sums(n, 0);
    for (const auto& [a, b] : edges) {
        sums[a] += degrees[b];
        sums[b] += degrees[a];
    }
    return sums;
}

} // namespace oracle
