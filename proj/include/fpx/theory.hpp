#pragma once

#include <memory>
#include <vector>

#include "fpx/density.hpp"

namespace fpx {

/// Conditional motif families, anchored at X1 = x. The first four have exact
/// quadrature counterparts; the last two are the r^3 families with several
/// equal-in-expectation members each.
enum class MotifKind {
    Edge,             // A12
    Cherry,           // A12*A13
    Path,             // A12*A23
    Triangle,         // A12*A13*A23
    ThreeEdgePath,    // A12*A23*A24 family
    TrianglePlusEdge, // A12*A13*A23*A34 family
};

const char* motif_name(MotifKind m);

enum class Regime { RelativelySparse, Intermediate, RelativelyDense };

const char* regime_name(Regime r);

/// Bucket boundaries on n*r^3. The model only fixes the limits; these
/// concrete cutoffs are configurable.
struct RegimeThresholds {
    double sparse = 0.01;
    double dense = 100.0;
};

Regime classify_regime(double nr3, RegimeThresholds t = {});

/// First-order prediction of E[F_n]: (n r^3 / 3) * int (f')^2 + 1/4.
struct Prediction {
    double mean_fn = 0.0;
    double fprime_sq_integral = 0.0;
    Regime regime = Regime::RelativelySparse;
    double lambda = 0.0; // n * r^3
    std::size_t n = 0;
    double r = 0.0;

    /// Leading term of the conditional mean degree, 2(n-1) r f(x).
    double mean_degree_at(double x) const;

    std::shared_ptr<const PeriodicDensity> density;
};

/// Evaluates the predictor for a density at (n, r). The o(1) remainder is
/// dropped, not modeled. Throws RadiusOutOfRange unless 0 < r <= 0.5.
Prediction expected_fn(const PeriodicDensity& d, std::size_t n, double r,
                       RegimeThresholds thresholds = {});

/// Density-dependent constant of the intermediate regime for the von Mises
/// family: (4 pi^2 k^2)/(3 I0^2) * int_0^1 exp(2k cos(2pi x - mu)) sin^2(2pi x - mu) dx.
/// Independent of mu to rounding.
double tau_f(double kappa, double mu);

struct TauRow {
    double kappa;
    double mu;
    double tau;
};

/// The 15-cell (kappa, mu) grid: kappa in {0.1, 0.5, 1, 5, 10} x
/// mu in {0.1, 0.3, 0.5}.
std::vector<TauRow> table1();

/// Exact conditional motif probability given X1 = x by nested periodic
/// quadrature. Supports Edge, Cherry, Path, Triangle; 0 < r <= 0.1.
double motif_prob_exact(const PeriodicDensity& d, double x, double r, MotifKind m);

/// Leading-order polynomial in r with f, f', f'' evaluated at x. All six
/// motif kinds.
double motif_prob_asymptotic(const PeriodicDensity& d, double x, double r, MotifKind m);

} // namespace fpx
