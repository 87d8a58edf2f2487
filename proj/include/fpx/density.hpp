#pragma once

#include <span>
#include <string>
#include <vector>

#include "fpx/positions.hpp"
#include "fpx/rng.hpp"

namespace fpx {

/// Modified Bessel function of the first kind, order zero:
/// I0(k) = sum_{m>=0} (k/2)^{2m} / (m!)^2, truncated at 1e-16 relative.
/// Normalizes the von Mises density.
double bessel_i0(double kappa);

enum class DensityKind { Uniform, VonMises, Tabulated };

/// Probability density on the circle of circumference 1.
///
/// Construction enforces the model contract: unit mass (1e-10), periodicity
/// across the seam, and a positivity floor of 1e-6 probed on a 4096-point
/// grid. Instances are immutable afterwards and safe to share across threads;
/// sampling draws from a caller-owned generator, so the object itself holds
/// no mutable state.
class PeriodicDensity {
  public:
    static PeriodicDensity uniform();
    /// exp(kappa*cos(2*pi*x - mu)) / I0(kappa); mu is a phase in radians.
    static PeriodicDensity von_mises(double kappa, double mu);
    /// Values at the equispaced grid k/M, k = 0..M-1. Interpolated with a
    /// periodic cubic spline and renormalized so the spline mass is exactly 1.
    static PeriodicDensity tabulated(std::vector<double> values);
    /// Two-column CSV (x, f(x)); optional header; grid must be equispaced
    /// within 1e-9 and cover [0,1).
    static PeriodicDensity from_csv(const std::string& path);

    DensityKind kind() const { return kind_; }
    double kappa() const { return kappa_; }
    double mu() const { return mu_; }
    double normalizer() const { return normalizer_; }

    /// f(x mod 1); accepts any real x via the periodic extension.
    double eval(double x) const;
    /// First or second derivative of the periodic extension at x.
    /// Analytic for Uniform/VonMises, grid central differences for Tabulated.
    double deriv(double x, int order) const;

    /// Cumulative distribution on [0,1]; linear interpolation of the
    /// 2^14+1-knot Simpson table (identity for Uniform).
    double cdf(double x) const;
    /// Genuine inverse of cdf: binary search + linear interpolation.
    double inverse_cdf(double p) const;
    /// Maps one uniform variate to one draw. The lookup runs in the sampling
    /// frame (phase-zero for VonMises) with the phase added afterwards, so
    /// draws rotate exactly with the density; for phase-shifted densities
    /// this is not the inverse of cdf.
    double sample_point(double u) const;

    /// n i.i.d. draws, one sample_point lookup per variate. Uniform consumes
    /// the generator directly. Deterministic given the seed.
    NodePositions sample(std::size_t n, Rng& rng) const;

    /// Cumulative table at knots k/N, N = 2^14, in the sampling frame
    /// (phase-zero for VonMises; empty for Uniform). Exposed for
    /// distribution tests.
    std::span<const double> cdf_knots() const { return cdf_; }

  private:
    PeriodicDensity() = default;
    void build_cdf_table();
    void validate();
    double base_quantile(double u) const;

    DensityKind kind_ = DensityKind::Uniform;
    double kappa_ = 0.0;
    double mu_ = 0.0;
    double normalizer_ = 1.0;
    double phase_ = 0.0;  // sampling-frame offset, mu/2pi mod 1 for VonMises
    double origin_ = 0.0; // base-frame mass left of the phase origin

    // Tabulated state: grid values (renormalized), spline second derivatives,
    // and central-difference derivative knots.
    std::vector<double> values_;
    std::vector<double> spline_m_;
    std::vector<double> d1_;
    std::vector<double> d2_;

    std::vector<double> cdf_; // size 2^14+1 for non-uniform kinds
};

} // namespace fpx
