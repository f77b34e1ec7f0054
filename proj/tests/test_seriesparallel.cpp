#include "degdist/enumoracle.hpp"
#include "degdist/seriesparallel.hpp"

#include "doctest.h"

using namespace degdist;

namespace {

BigInt enum_count(const LevelCounts& l, int k) {
    return k < (int)l.by_degree.size() ? BigInt(l.by_degree[k]) : BigInt(0);
}

}  // namespace

TEST_CASE("E and D solve their defining equations") {
    PrecisionScope ps(50);
    Real x("0.08"), y("1.3"), w("0.6");
    Real E = solve_E_sp(x, y);
    CHECK(abs(log((1 + E) / (1 + y)) - x * E * E / (1 + x * E)) < eps_digits(40));
    Real D = solve_D_sp(x, y, w);
    CHECK(abs(log((1 + D) / (1 + y * w)) - x * E * D / (1 + x * E)) < eps_digits(40));
    CHECK(solve_D_sp(x, y, Real(0)) == 0);
    // D(x,y,1) = E(x,y)
    CHECK(abs(solve_D_sp(x, y, Real(1)) - E) < eps_digits(40));
}

TEST_CASE("series-parallel constants") {
    PrecisionScope ps(50);
    SpConstants sc = constants_sp(SolverConfig::standard());
    CHECK(abs(sc.q_conn - Real("0.7504161")) < 1e-7);
    CHECK(abs(sc.q_2conn - Real("0.7620402")) < 1e-7);
    CHECK(abs(sc.q_conn - 1 / sc.w1) < eps_digits(40));
    CHECK(abs(sc.q_2conn - 1 / sc.w0) < eps_digits(40));
    // the direct Jacobian conditions locate the same singularities
    CHECK(abs(sp_w0_direct(sc) - sc.w0) < 1e-25);
    CHECK(abs(sp_w1_direct(sc) - sc.w1) < 1e-25);
    auto tr = sp_tau_rho(Real(1));
    CHECK(abs(tr[0] - sc.tau) < eps_digits(40));
    CHECK(abs(tr[1] - sc.rho) < eps_digits(40));
}

TEST_CASE("series-parallel distributions") {
    PrecisionScope ps(50);
    auto c = pgf_sp_conn(48);
    auto b = pgf_sp_2conn(48);
    CHECK(abs(c.total() - 1) < 1e-20);
    CHECK(abs(b.total() - 1) < 1e-20);
    CHECK(abs(c.d[1] - Real("0.1102133")) < 1e-7);
    CHECK(b.d[0] == 0);
    CHECK(b.d[1] == 0);
    SpConstants sc = constants_sp(SolverConfig::standard());
    CHECK(abs(c.d[1] - sc.rho) < eps_digits(35));
    // d_2 = 2 kappa d_1
    CHECK(abs(c.d[2] - 2 * sc.kappa * c.d[1]) < eps_digits(35));
    CHECK(abs(c.mean() - 2 * sc.kappa) < 1e-15);
}

TEST_CASE("series-parallel series identities") {
    auto net = sp_network_series(6);
    CHECK(exactly_equal(net[0], net[1]));
    auto br = sp_broot_series(6);
    CHECK(exactly_equal(br[0], br[1]));
}

TEST_CASE("series-parallel exact counts match enumeration") {
    auto c = sp_rooted_counts(5);
    auto b = sp_2conn_rooted_counts(5);
    for (int n = 1; n <= 5; ++n) {
        ClassCounts e = enumerate(n + 1, Family::SeriesParallel);
        for (int k = 0; k <= n; ++k) {
            CHECK(c[n][k] == enum_count(e.at(Level::Connected), k));
            CHECK(b[n][k] == enum_count(e.at(Level::TwoConnected), k));
        }
    }
}
