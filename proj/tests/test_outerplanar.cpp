#include "degdist/enumoracle.hpp"
#include "degdist/outerplanar.hpp"

#include "doctest.h"

using namespace degdist;

namespace {

double rel(const Real& a, const Real& b) { return static_cast<double>(abs(a - b) / abs(b)); }

}  // namespace

TEST_CASE("dissections are the little Schroeder numbers") {
    PrecisionScope ps(40);
    auto D = dissection_gf(8);
    const long want[] = {0, 1, 1, 3, 11, 45, 197, 903, 4279};
    for (int i = 0; i <= 8; ++i) CHECK(D[i] == Rational(want[i]));
    Real x("0.1");
    Real h("1e-15");
    CHECK(rel((dissection_value(x + h) - dissection_value(x - h)) / (2 * h), dissection_derivative(x)) < 1e-20);
}

TEST_CASE("outerplanar constants") {
    PrecisionScope ps(50);
    OuterConstants oc = constants_outer(SolverConfig::standard());
    CHECK(abs(oc.radiusB - (3 - 2 * sqrt(Real(2)))) < eps_digits(45));
    // tau solves tau B''(tau) = 1 and sits inside the disk of B
    CHECK(oc.tau > 0);
    CHECK(oc.tau < oc.radiusB);
    CHECK(abs(oc.q - Real("0.3808138")) < 1e-7);
    CHECK(abs(oc.c2 - sqrt(2 * oc.tau / oc.q)) < eps_digits(40));
}

TEST_CASE("2-connected outerplanar root degree is 2(k-1)(sqrt2-1)^k") {
    PrecisionScope ps(50);
    auto d = pgf_outer_2conn(30);
    Real q = sqrt(Real(2)) - 1;
    CHECK(d.d[0] == 0);
    CHECK(d.d[1] == 0);
    CHECK(abs(d.d[2] - (6 - 4 * sqrt(Real(2)))) < eps_digits(40));
    for (int k = 2; k <= 30; ++k) CHECK(rel(d.d[k], 2 * (k - 1) * pow(q, k)) < 1e-35);
    CHECK(abs(d.total() - 1) < 1e-30);
}

TEST_CASE("connected outerplanar distribution sums to one") {
    PrecisionScope ps(50);
    auto d = pgf_outer_conn(64);
    CHECK(abs(d.total() - 1) < 1e-25);
    CHECK(abs(d.d[1] - Real("0.1365937")) < 1e-7);
    for (int k = 1; k <= 64; ++k) CHECK(d.d[k] > 0);
    // ratios approach q from above
    OuterConstants oc = constants_outer(SolverConfig::standard());
    Real r = d.d[64] / d.d[63];
    CHECK(r > oc.q);
    CHECK(r - oc.q < Real("0.05"));
}

TEST_CASE("outerplanar exact counts match enumeration") {
    auto c = outer_rooted_counts(5);
    auto b = outer_2conn_rooted_counts(5);
    for (int n = 1; n <= 5; ++n) {
        ClassCounts e = enumerate(n + 1, Family::Outerplanar);
        for (int k = 0; k <= n; ++k) {
            BigInt ec = k < (int)e.at(Level::Connected).by_degree.size() ? BigInt(e.at(Level::Connected).by_degree[k]) : BigInt(0);
            BigInt eb = k < (int)e.at(Level::TwoConnected).by_degree.size() ? BigInt(e.at(Level::TwoConnected).by_degree[k]) : BigInt(0);
            CHECK(c[n][k] == ec);
            CHECK(b[n][k] == eb);
        }
    }
}

TEST_CASE("C' counts connected outerplanar graphs") {
    auto s = outer_cprime_series(7);
    // n! [x^n] C' = connected outerplanar graphs on n+1 vertices; K4 is the
    // only connected graph on 4 vertices that is excluded.
    const long want[] = {1, 1, 4, 37};
    Rational fact = 1;
    for (int n = 0; n <= 3; ++n) {
        if (n > 0) fact *= n;
        CHECK(s[n] * fact == Rational(want[n]));
    }
    auto c = outer_rooted_counts(6);
    fact = 1;
    for (int n = 1; n <= 6; ++n) {
        fact *= n;
        BigInt total = 0;
        for (const auto& v : c[n]) total += v;
        CHECK(Rational(total) == s[n] * fact);
    }
}
