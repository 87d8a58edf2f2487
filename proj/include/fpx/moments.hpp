#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fpx/density.hpp"
#include "fpx/theory.hpp"

namespace fpx {

/// Concrete indicator products for Monte Carlo, one per adjacency pattern.
/// The r^3 families of equal conditional expectations are spelled out so the
/// equality claims can be checked member against member.
enum class MotifIndicator {
    Edge_12,
    Cherry_12_13,
    Path_12_23,
    Triangle_12_13_23,
    ThreeEdgePath_12_23_24, // canonical for MotifKind::ThreeEdgePath
    ThreeEdgePath_12_13_34,
    ThreeEdgePath_12_13_14,
    TrianglePlusEdge_12_13_23_34, // canonical for MotifKind::TrianglePlusEdge
    TrianglePlusEdge_12_13_23_14,
};

const char* indicator_name(MotifIndicator ind);
MotifIndicator canonical_indicator(MotifKind kind);
std::span<const MotifIndicator> family_members(MotifKind kind);
/// Auxiliary points (beyond the anchor) a replicate must draw: 1, 2 or 3.
int indicator_points(MotifIndicator ind);

/// One Monte Carlo estimate of a conditional motif probability at a fixed
/// anchor. Bit-reproducible for fixed (seed, samples, motif, x, r, density),
/// for any worker count.
struct MomentEstimate {
    MotifKind motif = MotifKind::Edge;
    MotifIndicator indicator = MotifIndicator::Edge_12;
    double anchor_x = 0.0;
    double r = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0; // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Estimates E[indicator | X1 = x] by averaging exact indicator products over
/// i.i.d. auxiliary draws from d. The uniform stream per replicate does not
/// depend on r or the anchor, so estimates at the same seed are coupled
/// (monotone in r, equivariant under rotations of the whole setup).
/// Requires samples >= 1e4 (SampleBudgetTooSmall) and 0 < r <= 0.5
/// (RadiusOutOfRange).
MomentEstimate estimate_indicator(const PeriodicDensity& d, double x, double r,
                                  MotifIndicator ind, std::uint64_t samples,
                                  std::uint64_t seed, int workers = 1);

/// Same through the canonical indicator of the motif family.
MomentEstimate estimate_motif(const PeriodicDensity& d, double x, double r,
                              MotifKind kind, std::uint64_t samples,
                              std::uint64_t seed, int workers = 1);

/// One estimate per anchor with a shared stream, exercising the wrap-around
/// seam alongside interior points.
std::vector<MomentEstimate> boundary_sweep(const PeriodicDensity& d, double r,
                                           MotifKind kind,
                                           std::span<const double> anchors,
                                           std::uint64_t samples,
                                           std::uint64_t seed, int workers = 1);

} // namespace fpx
