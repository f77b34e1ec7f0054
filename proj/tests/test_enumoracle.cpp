#include "degdist/enumoracle.hpp"
#include "degdist/outerplanar.hpp"

#include "doctest.h"

#include <numeric>
#include <random>
#include <sstream>

using namespace degdist;

TEST_CASE("classification of small graphs") {
    auto k4 = classify(SmallGraph::complete(4));
    CHECK(k4.three_connected);
    CHECK(k4.planar);
    CHECK_FALSE(k4.series_parallel);
    CHECK_FALSE(k4.outerplanar);
    auto k5 = classify(SmallGraph::complete(5));
    CHECK_FALSE(k5.planar);
    auto k33 = classify(SmallGraph::complete_bipartite(3, 3));
    CHECK_FALSE(k33.planar);
    CHECK(k33.three_connected);
    auto k23 = classify(SmallGraph::complete_bipartite(2, 3));
    CHECK(k23.series_parallel);
    CHECK_FALSE(k23.outerplanar);
    auto c6 = classify(SmallGraph::cycle(6));
    CHECK(c6.two_connected);
    CHECK_FALSE(c6.three_connected);
    CHECK(c6.outerplanar);
    auto e3 = classify(SmallGraph::empty(3));
    CHECK_FALSE(e3.connected);
}

TEST_CASE("mask round trip and relabeling") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        std::uint64_t m = rng() & ((1ull << 21) - 1);
        SmallGraph g = SmallGraph::from_mask(7, m);
        CHECK(g.mask() == m);
        std::vector<int> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        SmallGraph h = g.permuted(perm);
        CHECK(h.edges() == g.edges());
        auto a = classify(g), b = classify(h);
        CHECK(a.planar == b.planar);
        CHECK(a.two_connected == b.two_connected);
        CHECK(a.outerplanar == b.outerplanar);
    }
}

TEST_CASE("labeled graph counts") {
    // connected planar graphs on n labeled vertices
    const std::uint64_t planar_conn[] = {0, 1, 1, 4, 38, 727, 26013, 1597690};
    const std::uint64_t planar_2conn[] = {0, 0, 0, 1, 10, 237, 10707, 774924};
    for (int n = 1; n <= 7; ++n) {
        const auto& all = enumerate_all(n);
        CHECK(all[2].at(Level::Connected).count == planar_conn[n]);
        if (n >= 3) CHECK(all[2].at(Level::TwoConnected).count == planar_2conn[n]);
    }
    // every connected graph on 4 vertices except K4 is outerplanar
    CHECK(enumerate(4, Family::Outerplanar).at(Level::Connected).count == 37);
    CHECK(enumerate(4, Family::SeriesParallel).at(Level::Connected).count == 37);
    CHECK(enumerate(4, Family::Planar).at(Level::ThreeConnected).count == 1);
}

TEST_CASE("symmetry reduction matches the per-vertex histogram") {
    // sum_k by_degree[k] = count, and sum_k k by_degree[k] = 2m count / n
    for (int n = 3; n <= 6; ++n) {
        ClassCounts cc = enumerate(n, Family::Planar);
        const auto& lc = cc.at(Level::Connected);
        std::uint64_t tot = 0, deg = 0, edges = 0;
        for (std::size_t k = 0; k < lc.by_degree.size(); ++k) {
            tot += lc.by_degree[k];
            deg += k * lc.by_degree[k];
        }
        for (std::size_t m = 0; m < lc.by_edges.size(); ++m) edges += m * lc.by_edges[m];
        CHECK(tot == lc.count);
        CHECK(deg * n == 2 * edges);
    }
}

TEST_CASE("count table round trip") {
    ClassCounts c = enumerate(5, Family::SeriesParallel);
    std::stringstream ss;
    write_count_table(ss, c);
    auto rows = read_count_table(ss, Family::SeriesParallel, 5, Level::Connected);
    std::uint64_t tot = 0;
    for (const auto& r : rows) tot += r[2];
    CHECK(tot == c.at(Level::Connected).count);
}

TEST_CASE("finite-n distributions") {
    CHECK_THROWS_AS(finite_n_distribution(7, Family::Planar, Level::Connected), TooLarge);
    CHECK_THROWS_AS(finite_n_distribution(8, Family::Planar, Level::Connected, {true, 0}), TooLarge);
    auto d = finite_n_distribution(5, Family::Planar, Level::Connected);
    Rational s = 0;
    for (const auto& v : d) s += v;
    CHECK(s == 1);
    CHECK(d[0] == 0);
}

TEST_CASE("graphs on 8 vertices" * doctest::timeout(300)) {
    EnumOptions opt{true, 0};
    const auto& all = enumerate_all(8, opt);
    CHECK(all[2].at(Level::Connected).count == 149248656ull);
    CHECK(all[2].at(Level::TwoConnected).count == 78702536ull);
    // root degree 1 among outerplanar graphs on 8 vertices is already near its limit
    PrecisionScope ps(40);
    auto d = finite_n_distribution(7, Family::Outerplanar, Level::Connected, opt);
    OuterConstants oc = constants_outer(SolverConfig::standard());
    Real d1(d[1]);
    CHECK(abs(d1 - oc.rho) < Real("0.05"));
}
