#include "fpx/moments.hpp"

#include <array>
#include <cmath>

#include "fpx/errors.hpp"
#include "fpx/experiment.hpp"
#include "fpx/rgg.hpp"

namespace fpx {

namespace {

constexpr std::uint64_t kChunk = 1 << 15; // fixed, so merges ignore worker count
constexpr std::uint64_t kMinSamples = 10000;

bool eval_indicator(MotifIndicator ind, double x, const double* p, double r) {
    auto hit = [r](double a, double b) { return circ_dist(a, b) <= r; };
    switch (ind) {
    case MotifIndicator::Edge_12:
        return hit(x, p[0]);
    case MotifIndicator::Cherry_12_13:
        return hit(x, p[0]) && hit(x, p[1]);
    case MotifIndicator::Path_12_23:
        return hit(x, p[0]) && hit(p[0], p[1]);
    case MotifIndicator::Triangle_12_13_23:
        return hit(x, p[0]) && hit(x, p[1]) && hit(p[0], p[1]);
    case MotifIndicator::ThreeEdgePath_12_23_24:
        return hit(x, p[0]) && hit(p[0], p[1]) && hit(p[0], p[2]);
    case MotifIndicator::ThreeEdgePath_12_13_34:
        return hit(x, p[0]) && hit(x, p[1]) && hit(p[1], p[2]);
    case MotifIndicator::ThreeEdgePath_12_13_14:
        return hit(x, p[0]) && hit(x, p[1]) && hit(x, p[2]);
    case MotifIndicator::TrianglePlusEdge_12_13_23_34:
        return hit(x, p[0]) && hit(x, p[1]) && hit(p[0], p[1]) && hit(p[1], p[2]);
    case MotifIndicator::TrianglePlusEdge_12_13_23_14:
        return hit(x, p[0]) && hit(x, p[1]) && hit(p[0], p[1]) && hit(x, p[2]);
    }
    return false;
}

MotifKind kind_of(MotifIndicator ind) {
    switch (ind) {
    case MotifIndicator::Edge_12: return MotifKind::Edge;
    case MotifIndicator::Cherry_12_13: return MotifKind::Cherry;
    case MotifIndicator::Path_12_23: return MotifKind::Path;
    case MotifIndicator::Triangle_12_13_23: return MotifKind::Triangle;
    case MotifIndicator::ThreeEdgePath_12_23_24:
    case MotifIndicator::ThreeEdgePath_12_13_34:
    case MotifIndicator::ThreeEdgePath_12_13_14: return MotifKind::ThreeEdgePath;
    case MotifIndicator::TrianglePlusEdge_12_13_23_34:
    case MotifIndicator::TrianglePlusEdge_12_13_23_14:
        return MotifKind::TrianglePlusEdge;
    }
    return MotifKind::Edge;
}

} // namespace

const char* indicator_name(MotifIndicator ind) {
    switch (ind) {
    case MotifIndicator::Edge_12: return "A12";
    case MotifIndicator::Cherry_12_13: return "A12A13";
    case MotifIndicator::Path_12_23: return "A12A23";
    case MotifIndicator::Triangle_12_13_23: return "A12A13A23";
    case MotifIndicator::ThreeEdgePath_12_23_24: return "A12A23A24";
    case MotifIndicator::ThreeEdgePath_12_13_34: return "A12A13A34";
    case MotifIndicator::ThreeEdgePath_12_13_14: return "A12A13A14";
    case MotifIndicator::TrianglePlusEdge_12_13_23_34: return "A12A13A23A34";
    case MotifIndicator::TrianglePlusEdge_12_13_23_14: return "A12A13A23A14";
    }
    return "?";
}

MotifIndicator canonical_indicator(MotifKind kind) {
    switch (kind) {
    case MotifKind::Edge: return MotifIndicator::Edge_12;
    case MotifKind::Cherry: return MotifIndicator::Cherry_12_13;
    case MotifKind::Path: return MotifIndicator::Path_12_23;
    case MotifKind::Triangle: return MotifIndicator::Triangle_12_13_23;
    case MotifKind::ThreeEdgePath: return MotifIndicator::ThreeEdgePath_12_23_24;
    case MotifKind::TrianglePlusEdge:
        return MotifIndicator::TrianglePlusEdge_12_13_23_34;
    }
    return MotifIndicator::Edge_12;
}

std::span<const MotifIndicator> family_members(MotifKind kind) {
    static constexpr std::array<MotifIndicator, 3> three_edge{
        MotifIndicator::ThreeEdgePath_12_23_24,
        MotifIndicator::ThreeEdgePath_12_13_34,
        MotifIndicator::ThreeEdgePath_12_13_14};
    static constexpr std::array<MotifIndicator, 2> tri_edge{
        MotifIndicator::TrianglePlusEdge_12_13_23_34,
        MotifIndicator::TrianglePlusEdge_12_13_23_14};
    switch (kind) {
    case MotifKind::ThreeEdgePath:
        return {three_edge.data(), three_edge.size()};
    case MotifKind::TrianglePlusEdge:
        return {tri_edge.data(), tri_edge.size()};
    default: {
        static constexpr std::array<MotifIndicator, 4> singles{
            MotifIndicator::Edge_12,
            MotifIndicator::Cherry_12_13,
            MotifIndicator::Path_12_23,
            MotifIndicator::Triangle_12_13_23,
        };
        return {singles.data() + static_cast<int>(kind), 1};
    }
    }
}

int indicator_points(MotifIndicator ind) {
    switch (ind) {
    case MotifIndicator::Edge_12: return 1;
    case MotifIndicator::Cherry_12_13:
    case MotifIndicator::Path_12_23:
    case MotifIndicator::Triangle_12_13_23: return 2;
    default: return 3;
    }
}

MomentEstimate estimate_indicator(const PeriodicDensity& d, double x, double r,
                                  MotifIndicator ind, std::uint64_t samples,
                                  std::uint64_t seed, int workers) {
    if (samples < kMinSamples)
        throw SampleBudgetTooSmall("estimate: needs at least 1e4 samples");
    if (!(r > 0.0 && r <= 0.5))
        throw RadiusOutOfRange("estimate: radius must lie in (0, 0.5]");

    const int npts = indicator_points(ind);
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> hits(chunks, 0);

    // Each chunk owns a substream keyed by (seed, chunk index) only; draws
    // depend on neither r nor the anchor, which couples estimates across
    // radii and anchors at a fixed seed.
    parallel_for(chunks, workers, [&](std::size_t c) {
        Rng rng(hash64(seed, c));
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(lo + kChunk, samples);
        double pts[3] = {0.0, 0.0, 0.0};
        std::uint64_t count = 0;
        for (std::uint64_t s = lo; s < hi; ++s) {
            for (int k = 0; k < npts; ++k) pts[k] = d.sample_point(uniform01(rng));
            count += eval_indicator(ind, x, pts, r) ? 1 : 0;
        }
        hits[c] = count;
    });

    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h;

    MomentEstimate est;
    est.motif = kind_of(ind);
    est.indicator = ind;
    est.anchor_x = x;
    est.r = r;
    est.samples = samples;
    est.seed = seed;
    est.mean = static_cast<double>(total) / static_cast<double>(samples);
    // Bernoulli plug-in sample variance; i.i.d. replicates make it exact.
    est.stderr_ = std::sqrt(est.mean * (1.0 - est.mean) /
                            static_cast<double>(samples - 1));
    return est;
}

MomentEstimate estimate_motif(const PeriodicDensity& d, double x, double r,
                              MotifKind kind, std::uint64_t samples,
                              std::uint64_t seed, int workers) {
    return estimate_indicator(d, x, r, canonical_indicator(kind), samples, seed,
                              workers);
}

std::vector<MomentEstimate> boundary_sweep(const PeriodicDensity& d, double r,
                                           MotifKind kind,
                                           std::span<const double> anchors,
                                           std::uint64_t samples,
                                           std::uint64_t seed, int workers) {
    std::vector<MomentEstimate> out;
    out.reserve(anchors.size());
    for (double a : anchors)
        out.push_back(estimate_motif(d, a, r, kind, samples, seed, workers));
    return out;
}

} // namespace fpx
