#include "degdist/enumoracle.hpp"
#include "degdist/maps3.hpp"

#include "doctest.h"

#include <random>

using namespace degdist;

namespace {

Real square(const Real& a) { return a * a; }

}  // namespace

TEST_CASE("RS system small branch") {
    PrecisionScope ps(50);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.001, 0.04);
    for (int i = 0; i < 6; ++i) {
        Real X(u(rng)), Y(u(rng));
        auto rs = solve_RS(X, Y);
        CHECK(abs(rs[0] - X * square(rs[1] + 1)) < eps_digits(40));
        CHECK(abs(rs[1] - Y * square(rs[0] + 1)) < eps_digits(40));
        CHECK(rs[0] > 0);
        CHECK(rs[0] < 1);
    }
    auto z = solve_RS(Real(0), Real(0));
    CHECK(z[0] == 0);
    CHECK(z[1] == 0);
}

TEST_CASE("root valency solves its quadratic") {
    PrecisionScope ps(50);
    for (const char* w : {"0.2", "0.6", "1"}) {
        MapGfPoint p = Q_eval(Real("0.01"), Real("0.3"), Real(w));
        CHECK(abs(w_quadratic_residual(p)) < eps_digits(35));
    }
}

TEST_CASE("T closed form agrees with the map form") {
    PrecisionScope ps(50);
    Real x("0.02"), z("0.7");
    for (const char* w : {"0.1", "0.5", "0.9"}) CHECK(abs(T_root(x, z, Real(w)) - T_root_via_Q(x, z, Real(w))) < eps_digits(35));
}

TEST_CASE("quadratic system two ways") {
    QuadOracle q = quad_system_oracle(3, 3, 3);
    CHECK(exactly_equal(q.Q_closed, q.Q_iter));
    CHECK(exactly_equal(q.w_closed, q.w_iter));
    CHECK(T_root_coefficients(6) == T_root_coefficients_via_quadratic(6));
}

TEST_CASE("T coefficients count rooted 3-connected graphs") {
    TCoeffs t = T_root_coefficients(6);
    // K4: one graph on 4 vertices with 6 edges, every root vertex of degree 3.
    CHECK(t.at({4, 6, 3}) * 24 == Rational(12));
    for (const auto& [key, v] : t)
        if (std::get<0>(key) < 4) CHECK(v == 0);
    for (int n = 5; n <= 6; ++n) {
        const auto& lc = enumerate_all(n)[2].at(Level::ThreeConnected);
        Rational fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        for (std::size_t m = 0; m < lc.by_edges_degree.size(); ++m)
            for (int k = 0; k < n; ++k) {
                auto it = t.find({n, static_cast<int>(m), k});
                Rational got = it == t.end() ? Rational(0) : it->second;
                CHECK(got * fact == Rational(BigInt(k) * n * BigInt(lc.by_edges_degree[m][k])));
            }
    }
}
