#include "degdist/enumoracle.hpp"
#include "degdist/planar.hpp"

#include "doctest.h"

using namespace degdist;

namespace {

double rel(const Real& a, const Real& b) { return static_cast<double>(abs(a - b) / abs(b)); }

BigInt enum_count(const LevelCounts& l, int k) {
    return k < (int)l.by_degree.size() ? BigInt(l.by_degree[k]) : BigInt(0);
}

}  // namespace

TEST_CASE("3-connected singularity closed forms") {
    PrecisionScope ps(50);
    Real s7 = sqrt(Real(7));
    CHECK(abs(r_of_z(Real(1)) - (7 * s7 - 17) / 32) < eps_digits(40));
    CHECK(abs(u0_tilde(Real(1)) - (s7 - 1) / 3) < eps_digits(40));
    Real x("0.05");
    CHECK(abs(r_of_z(tau_of_x(x)) - x) < eps_digits(40));
    Real u = u0_of_x(x);
    CHECK(abs((1 + u) * pow(3 * u - 1, 3) / (16 * u) - x) < eps_digits(40));
    CHECK(rel(u1_implicit(x), uv_expansion_x(x).u[1]) < 1e-30);
}

TEST_CASE("T coefficients against a fit of the function") {
    PrecisionScope ps(60);
    Real s7 = sqrt(Real(7));
    Real r1 = (7 * s7 - 17) / 32, u0 = (s7 - 1) / 3;
    auto fit = T_fit(r1, Real("0.5"));
    auto tc = T_singular_coeffs(u0, Real("0.5"));
    CHECK(rel(tc.T0, fit[0]) < 1e-8);
    CHECK(rel(tc.T2, fit[2]) < 1e-6);
    CHECK(rel(tc.T3, fit[3]) < 1e-4);
}

TEST_CASE("the two routes to the planar w-singularity agree") {
    PrecisionScope ps(50);
    Real a = 1 / w3_of_y(Real(1)), b = 1 / w3_direct(Real(1));
    CHECK(abs(a - Real("0.6734506")) < 1e-7);
    CHECK(abs(a - b) < 1e-20);
}

TEST_CASE("planar distributions") {
    PrecisionScope ps(50);
    auto c = pgf_planar_conn(40);
    CHECK(abs(c.total() - 1) < 1e-8);
    CHECK(abs(c.d[1] - rho_of_y(Real(1))) < eps_digits(30));
    CHECK(abs(c.d[1] - Real("0.0367284")) < 1e-7);
    auto t = pgf_planar_3conn(40);
    Real s7 = sqrt(Real(7));
    CHECK(abs(t.d.d[2]) < eps_digits(40));
    CHECK(abs(t.d.total() - 1) < 1e-8);
    CHECK(abs(t.d.mean() - (7 + s7) / 2) < 1e-6);
}

TEST_CASE("density conditioning at its own saddle abscissa is unconditioned") {
    PrecisionScope ps(40);
    Real mu = density_mu_at_one(Level::ThreeConnected);
    CHECK(abs(mu - (7 + sqrt(Real(7))) / 4) < 1e-25);
    CHECK(abs(density_parameter(Level::ThreeConnected, mu) - 1) < 1e-20);
}

TEST_CASE("planar exact counts match enumeration") {
    auto c = planar_rooted_counts(5);
    auto b = planar_2conn_rooted_counts(5);
    for (int n = 1; n <= 5; ++n) {
        ClassCounts e = enumerate(n + 1, Family::Planar);
        for (int k = 0; k <= n; ++k) {
            CHECK(c[n][k] == enum_count(e.at(Level::Connected), k));
            CHECK(b[n][k] == enum_count(e.at(Level::TwoConnected), k));
        }
    }
}
