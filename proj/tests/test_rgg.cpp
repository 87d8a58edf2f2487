#include "doctest.h"

#include <chrono>
#include <cmath>
#include <set>

#include "fpx/density.hpp"
#include "fpx/errors.hpp"
#include "fpx/rgg.hpp"
#include "oracles.hpp"

using namespace fpx;

TEST_CASE("circ_dist basics") {
    CHECK(circ_dist(0.1, 0.9) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(circ_dist(0.4, 0.4) == 0.0);
    CHECK(circ_dist(0.25, 0.75) == 0.5);
}

TEST_CASE("build_graph hand cases") {
    {
        auto g = build_graph(NodePositions({0.0, 0.1, 0.5}), 0.15);
        CHECK(g.degrees() == std::vector<std::int64_t>{1, 1, 0});
    }
    {
        // inclusive rule: arc neighbors at exactly 0.25
        auto g = build_graph(NodePositions({0.0, 0.25, 0.5, 0.75}), 0.25);
        CHECK(g.degrees() == std::vector<std::int64_t>{2, 2, 2, 2});
    }
    CHECK_THROWS_AS(build_graph(NodePositions({0.1, 0.2}), 0.6), RadiusOutOfRange);
    CHECK_THROWS_AS(build_graph(NodePositions({0.1, 0.2}), -0.1), RadiusOutOfRange);
}

TEST_CASE("naive_adjacency hand cases") {
    {
        auto a = naive_adjacency(NodePositions({0.1, 0.2}), 0.1);
        CHECK(a.edges == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}});
    }
    {
        auto a = naive_adjacency(NodePositions({0.1, 0.15, 0.2}), 0.1);
        CHECK(a.degrees == std::vector<std::int64_t>{2, 2, 2});
        CHECK(a.edges.size() == 3);
    }
    NodePositions big(std::vector<double>(20001, 0.5));
    CHECK_THROWS_AS(naive_adjacency(big, 0.1), TooLargeForOracle);
}

TEST_CASE("antipodal tie at r = 0.5 is one edge; r = 0.5 gives complete graphs") {
    auto g = build_graph(NodePositions({0.0, 0.5}), 0.5);
    CHECK(g.degrees() == std::vector<std::int64_t>{1, 1});
    auto a = naive_adjacency(NodePositions({0.0, 0.5}), 0.5);
    CHECK(a.degrees == g.degrees());
    CHECK(g.edges() == a.edges);

    // every pair is within 0.5, antipodal pairs included exactly once
    auto g4 = build_graph(NodePositions({0.0, 0.25, 0.5, 0.75}), 0.5);
    CHECK(g4.degrees() == std::vector<std::int64_t>{3, 3, 3, 3});
    CHECK(g4.edges().size() == 6);
}

TEST_CASE("equispaced triangle closes at a float-safe radius") {
    NodePositions p({0.0, 1.0 / 3.0, 2.0 / 3.0});
    auto g = build_graph(p, 0.3334);
    CHECK(g.degrees() == std::vector<std::int64_t>{2, 2, 2});
    auto a = naive_adjacency(p, 0.3334);
    CHECK(a.degrees == g.degrees());
    // at r = fl(1/3) both paths still agree, whatever the rounding decided
    auto g2 = build_graph(p, 1.0 / 3.0);
    auto a2 = naive_adjacency(p, 1.0 / 3.0);
    CHECK(g2.degrees() == a2.degrees);
}

TEST_CASE("duplicate positions are mutual neighbors at distance zero") {
    auto g = build_graph(NodePositions({0.3, 0.3, 0.8}), 0.0);
    CHECK(g.degrees() == std::vector<std::int64_t>{1, 1, 0});
}

TEST_CASE("sweep equals the naive oracle across densities and radii") {
    const auto uniform = PeriodicDensity::uniform();
    const auto vm = PeriodicDensity::von_mises(2.0, 0.0);

    {
        Rng rng(11);
        auto g = build_graph(uniform.sample(1000, rng), 0.01);
        auto a = naive_adjacency(g.positions(), 0.01);
        CHECK(g.degrees() == a.degrees);
    }
    {
        Rng rng(12);
        auto g = build_graph(vm.sample(500, rng), 0.05);
        auto a = naive_adjacency(g.positions(), 0.05);
        CHECK(g.degrees() == a.degrees);
        CHECK(g.edges() == a.edges);
    }
}

TEST_CASE("window contiguity: window contents equal oracle neighbor sets") {
    const auto vm = PeriodicDensity::von_mises(1.0, 0.7);
    Rng rng(2024);
    for (int inst = 0; inst < 100; ++inst) {
        const std::size_t n = 2 + (rng() % 1999);
        const double r = std::exp(std::log(1e-3) +
                                  uniform01(rng) * std::log(0.5 / 1e-3));
        auto g = build_graph(vm.sample(n, rng), r);
        auto naive = naive_adjacency(g.positions(), r);
        REQUIRE(g.degrees() == naive.degrees);

        // spot-check full neighbor sets on a few nodes per instance
        std::vector<std::set<std::uint32_t>> adj(n);
        for (auto [a, b] : naive.edges) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for (int probe = 0; probe < 5; ++probe) {
            const std::size_t i = rng() % n;
            const auto w = g.window(g.rank_of(i));
            std::set<std::uint32_t> from_window;
            for (std::uint32_t k = w.lo; k < w.lo + w.len; ++k) {
                const std::uint32_t rank = k % n;
                if (rank == g.rank_of(i)) continue;
                from_window.insert(g.positions().sorted_order[rank]);
            }
            CHECK(from_window == adj[i]);
        }
    }
}

TEST_CASE("rotation invariance on a grid-aligned instance") {
    // positions and shifts on the 2^-10 grid make the circle arithmetic exact
    Rng rng(77);
    std::vector<double> xs(400);
    for (double& v : xs) v = static_cast<double>(rng() % 1024) / 1024.0;
    const double r = 37.0 / 1024.0;
    auto g0 = build_graph(NodePositions(xs), r);

    for (double delta : {1.0 / 1024.0, 256.0 / 1024.0, 1000.0 / 1024.0}) {
        std::vector<double> shifted(xs);
        for (double& v : shifted) {
            v += delta;
            if (v >= 1.0) v -= 1.0;
        }
        auto g1 = build_graph(NodePositions(shifted), r);
        CHECK(g0.degrees() == g1.degrees());
    }
}

TEST_CASE("degrees are monotone nondecreasing in r") {
    const auto uniform = PeriodicDensity::uniform();
    Rng rng(31);
    auto p = uniform.sample(600, rng);
    std::vector<std::int64_t> prev(600, -1);
    for (double r : {0.001, 0.004, 0.02, 0.1, 0.37, 0.5}) {
        auto g = build_graph(p, r);
        for (std::size_t i = 0; i < 600; ++i) CHECK(g.degree(i) >= prev[i]);
        prev = g.degrees();
    }
}

TEST_CASE("degenerate graphs: empty, single node, duplicates only") {
    auto empty = build_graph(NodePositions(std::vector<double>{}), 0.1);
    CHECK(empty.size() == 0);
    CHECK(empty.edges().empty());

    auto one = build_graph(NodePositions({0.7}), 0.5);
    CHECK(one.degrees() == std::vector<std::int64_t>{0});
    CHECK(one.neighbor_degree_sum(0) == 0);

    auto dup = build_graph(NodePositions({0.5, 0.5}), 0.0);
    CHECK(dup.degrees() == std::vector<std::int64_t>{1, 1});
    CHECK(dup.neighbor_degree_sum(0) == 1);
}

TEST_CASE("sweep construction stays fast at half a million nodes") {
    // an accidental quadratic path would take minutes here
    const auto uniform = PeriodicDensity::uniform();
    Rng rng(555);
    const auto t0 = std::chrono::steady_clock::now();
    auto g = build_graph(uniform.sample(500000, rng), 2e-5);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(g.size() == 500000);
    CHECK(g.total_degree() > 0);
    CHECK(secs < 5.0);
}

TEST_CASE("neighbor_degree_sum equals direct summation over the edge list") {
    const auto vm = PeriodicDensity::von_mises(0.5, 0.1);
    Rng rng(4);
    auto g = build_graph(vm.sample(1000, rng), 0.03);
    auto naive = naive_adjacency(g.positions(), 0.03);
    auto sums = oracle::neighbor_sums_from_edges(1000, naive.degrees, naive.edges);
    std::int64_t parity = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        CHECK(neighbor_degree_sum(g, i) == sums[i]);
        parity += g.degree(i);
    }
    CHECK(parity % 2 == 0);

    auto empty = build_graph(NodePositions({0.1, 0.6}), 0.05);
    CHECK(neighbor_degree_sum(empty, 0) == 0);
}
