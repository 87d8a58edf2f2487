#include "doctest.h"

#include <cmath>
#include <numbers>

#include "fpx/errors.hpp"
#include "fpx/moments.hpp"
#include "fpx/theory.hpp"

using namespace fpx;

TEST_CASE("edge estimate hits the uniform closed form") {
    const auto uni = PeriodicDensity::uniform();
    const auto est = estimate_motif(uni, 0.5, 0.1, MotifKind::Edge, 1000000, 71);
    CHECK(std::abs(est.mean - 0.2) <= 4.0 * est.stderr_);
    CHECK(est.stderr_ > 0.0);
    CHECK(est.samples == 1000000);
}

TEST_CASE("triangle estimate hits the lens-area value") {
    const auto uni = PeriodicDensity::uniform();
    const double r = 0.05;
    const auto est = estimate_motif(uni, 0.123, r, MotifKind::Triangle, 1000000, 72);
    CHECK(std::abs(est.mean - 3.0 * r * r) <= 4.0 * est.stderr_);
}

TEST_CASE("cherry estimate agrees with quadrature and the leading order") {
    const auto vm = PeriodicDensity::von_mises(1.0, 0.0);
    const double x = 0.1, r = 0.02;
    const auto est = estimate_motif(vm, x, r, MotifKind::Cherry, 1000000, 73);
    const double exact = motif_prob_exact(vm, x, r, MotifKind::Cherry);
    const double asym = motif_prob_asymptotic(vm, x, r, MotifKind::Cherry);
    CHECK(std::abs(est.mean - exact) <= 4.0 * est.stderr_);
    CHECK(std::abs(est.mean - asym) <= 4.0 * est.stderr_ + 1e-6);
}

TEST_CASE("estimates are deterministic and worker-count invariant") {
    const auto vm = PeriodicDensity::von_mises(2.0, 0.4);
    const auto a = estimate_motif(vm, 0.3, 0.05, MotifKind::Path, 200000, 99, 1);
    const auto b = estimate_motif(vm, 0.3, 0.05, MotifKind::Path, 200000, 99, 1);
    const auto c = estimate_motif(vm, 0.3, 0.05, MotifKind::Path, 200000, 99, 8);
    CHECK(a.mean == b.mean);
    CHECK(a.mean == c.mean);
    CHECK(a.stderr_ == c.stderr_);
}

TEST_CASE("budget guard") {
    const auto uni = PeriodicDensity::uniform();
    CHECK_THROWS_AS(estimate_motif(uni, 0.5, 0.1, MotifKind::Edge, 9999, 1),
                    SampleBudgetTooSmall);
    CHECK_THROWS_AS(estimate_motif(uni, 0.5, 0.6, MotifKind::Edge, 10000, 1),
                    RadiusOutOfRange);
}

TEST_CASE("shared-uniform coupling makes every motif monotone in r") {
    const auto vm = PeriodicDensity::von_mises(1.0, 0.3);
    const MotifKind kinds[] = {MotifKind::Edge,          MotifKind::Cherry,
                               MotifKind::Path,          MotifKind::Triangle,
                               MotifKind::ThreeEdgePath, MotifKind::TrianglePlusEdge};
    for (MotifKind m : kinds) {
        double prev = -1.0;
        for (double r : {0.01, 0.03, 0.1, 0.25, 0.5}) {
            const auto est = estimate_motif(vm, 0.7, r, m, 50000, 1234);
            CHECK(est.mean >= prev);
            CHECK(est.mean >= 0.0);
            CHECK(est.mean <= 1.0);
            prev = est.mean;
        }
    }
}

TEST_CASE("cherry factorizes into the squared edge estimate") {
    const auto vm = PeriodicDensity::von_mises(1.5, 0.2);
    const double x = 0.4, r = 0.05;
    const auto cherry = estimate_motif(vm, x, r, MotifKind::Cherry, 400000, 500);
    const auto e1 = estimate_motif(vm, x, r, MotifKind::Edge, 400000, 501);
    const auto e2 = estimate_motif(vm, x, r, MotifKind::Edge, 400000, 502);
    const double prod = e1.mean * e2.mean;
    const double se_prod = std::sqrt(
        e1.stderr_ * e1.stderr_ * e2.mean * e2.mean +
        e2.stderr_ * e2.stderr_ * e1.mean * e1.mean);
    const double combined = std::sqrt(cherry.stderr_ * cherry.stderr_ +
                                      se_prod * se_prod);
    CHECK(std::abs(cherry.mean - prod) <= 5.0 * combined);
}

TEST_CASE("triangle is dominated by cherry and path pointwise") {
    const auto vm = PeriodicDensity::von_mises(1.0, 0.0);
    const double x = 0.25, r = 0.04;
    const auto tri = estimate_motif(vm, x, r, MotifKind::Triangle, 300000, 61);
    const auto cherry = estimate_motif(vm, x, r, MotifKind::Cherry, 300000, 61);
    const auto path = estimate_motif(vm, x, r, MotifKind::Path, 300000, 61);
    CHECK(tri.mean <= cherry.mean + 4.0 * tri.stderr_);
    CHECK(tri.mean <= path.mean + 4.0 * tri.stderr_);
}

TEST_CASE("boundary sweep: uniform anchors all see the same 2r mass") {
    const auto uni = PeriodicDensity::uniform();
    const double anchors[] = {0.01, 0.5, 0.99};
    const auto ests = boundary_sweep(uni, 0.05, MotifKind::Edge, anchors, 200000, 8);
    REQUIRE(ests.size() == 3);
    for (const auto& est : ests)
        CHECK(std::abs(est.mean - 0.1) <= 4.0 * est.stderr_);
}

TEST_CASE("seam anchors match the leading order like interior ones") {
    const auto vm = PeriodicDensity::von_mises(2.0, 0.0);
    const double r = 0.01;
    for (double x : {0.005, 0.995}) {
        const auto est = estimate_motif(vm, x, r, MotifKind::Edge, 1000000, 29);
        const double asym = motif_prob_asymptotic(vm, x, r, MotifKind::Edge);
        CHECK(std::abs(est.mean - asym) <= 4.0 * est.stderr_ + 1e-8);
    }
}

TEST_CASE("rotating anchor, density, and phase together is a no-op") {
    const double kappa = 2.0, mu = 0.3, shift = 0.5;
    const auto base = PeriodicDensity::von_mises(kappa, mu);
    const auto moved =
        PeriodicDensity::von_mises(kappa, mu + 2.0 * std::numbers::pi * shift);
    for (MotifKind m : {MotifKind::Edge, MotifKind::Triangle}) {
        const auto a = estimate_motif(base, 0.12, 0.03, m, 100000, 314);
        const auto b = estimate_motif(moved, 0.62, 0.03, m, 100000, 314);
        CHECK(a.mean == b.mean);
    }
}

TEST_CASE("the r^3 families agree member to member") {
    const auto vm = PeriodicDensity::von_mises(1.0, 0.0);
    for (MotifKind fam : {MotifKind::ThreeEdgePath, MotifKind::TrianglePlusEdge}) {
        const auto members = family_members(fam);
        std::vector<MomentEstimate> ests;
        for (std::size_t k = 0; k < members.size(); ++k)
            ests.push_back(estimate_indicator(vm, 0.3, 0.03, members[k], 200000,
                                              hash64(9000, k)));
        for (std::size_t i = 0; i < ests.size(); ++i)
            for (std::size_t j = i + 1; j < ests.size(); ++j) {
                const double combined =
                    std::sqrt(ests[i].stderr_ * ests[i].stderr_ +
                              ests[j].stderr_ * ests[j].stderr_);
                CHECK(std::abs(ests[i].mean - ests[j].mean) <= 5.0 * combined);
            }
        // and they estimate the asymptotic 8r^3 f^3 / 6r^3 f^3 scale
        const double asym = motif_prob_asymptotic(vm, 0.3, 0.03, fam);
        for (const auto& est : ests)
            CHECK(std::abs(est.mean - asym) <= 5.0 * est.stderr_ + 2e-5);
    }
}
