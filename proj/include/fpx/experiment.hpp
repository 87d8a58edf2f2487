#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fpx/density.hpp"
#include "fpx/rng.hpp"
#include "fpx/stats.hpp"
#include "fpx/theory.hpp"

namespace fpx {

/// Runs fn(0..count-1) across a small thread pool. Results must be written to
/// per-index slots; the caller's reduction order is then independent of the
/// worker count. Exceptions propagate after all workers join.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn);

/// Replicate seed = hash64(master_seed, n, replicate index).
inline std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t n,
                                    std::uint64_t rep) {
    return hash64(master, n, rep);
}

enum class RadiusRuleKind { Fixed, PowerLaw, Lambda };

/// How the radius scales with n: a constant, c * n^-alpha, or the
/// intermediate-regime rule r = (lambda / n)^(1/3).
struct RadiusRule {
    RadiusRuleKind kind = RadiusRuleKind::Fixed;
    double r = 0.01;     // Fixed
    double c = 1.0;      // PowerLaw
    double alpha = 0.7;  // PowerLaw
    double lambda = 0.5; // Lambda

    double radius_for(std::size_t n) const;
};

/// Density described by configuration rather than an object, so grids can be
/// serialized.
struct DensitySpec {
    DensityKind kind = DensityKind::Uniform;
    double kappa = 1.0;
    double mu = 0.0;
    std::string csv_path;

    PeriodicDensity make() const;
};

struct ExperimentGrid {
    DensitySpec density;
    std::vector<std::size_t> n_values;
    RadiusRule rule;
    std::size_t replications = 20;
    std::uint64_t master_seed = 1;
    int workers = 1;
    RegimeThresholds thresholds;
};

struct ConvergenceRow {
    std::size_t n = 0;
    double r = 0.0;
    double nr3 = 0.0;
    Regime regime = Regime::RelativelySparse;
    double fn_mean = 0.0;
    double fn_std = 0.0;
    double prediction = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    std::size_t replications = 0;
    double wall_time_ms = 0.0; // reported on stderr only, never in data files
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool pass = false;
    std::vector<std::string> warnings; // e.g. n*r below the omega(1) threshold
};

/// Runs the replication study over the grid. Validates every implied radius
/// up front (InfeasibleRadius if r > 0.5 or r <= 0) and needs >= 2 n values
/// for the trend verdict. PASS = rel_err and fn_std/fn_mean nonincreasing
/// along n within the slack factor.
ConvergenceReport run_convergence(const ExperimentGrid& grid, double slack = 1.15);

struct SimulateResult {
    std::size_t n = 0;
    double r = 0.0;
    double f_n = 0.0;
    double prediction = 0.0;
    double nr3 = 0.0;
    double fprime_sq_integral = 0.0;
    Regime regime = Regime::RelativelySparse;
    std::uint64_t seed = 0;
    std::size_t n_isolated = 0;
    ParadoxResult paradox; // per-node detail
    NodePositions positions;
    std::vector<std::int64_t> degrees;
};

/// One sample-build-measure run. Throws RadiusOutOfRange unless 0 < r <= 0.5.
SimulateResult run_simulate(const PeriodicDensity& d, std::size_t n, double r,
                            std::uint64_t seed,
                            RegimeThresholds thresholds = {});

} // namespace fpx
