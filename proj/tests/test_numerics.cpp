#include "degdist/numerics.hpp"

#include "doctest.h"

using namespace degdist;

namespace {

Real outer_psi_prime(const Real& u) {
    // psi(u) = u exp(-B'(u)) has psi' proportional to 1 - u B''(u).
    Real s = sqrt(1 - 6 * u + u * u);
    return 1 - u * (5 + (3 - u) / s) / 8;
}

}  // namespace

TEST_CASE("solve_scalar trivial linear root") {
    PrecisionScope p(50);
    auto cfg = SolverConfig::in(Real(0), Real(1));
    Real r = solve_scalar([](const Real& x) { return x - Real(1) / 2; }, cfg);
    CHECK(abs(r - Real(1) / 2) < eps_digits(cfg.target_digits));
}

TEST_CASE("solve_scalar outerplanar tau") {
    PrecisionScope p(50);
    Real hi = 3 - 2 * sqrt(Real(2));
    auto cfg = SolverConfig::in(Real("0.01"), hi - Real("1e-12"));
    Real tau = solve_scalar(outer_psi_prime, cfg);
    CHECK(abs(tau - Real("0.17076")) < Real("1e-5"));
    // Idempotent when fed its own output.
    Real again = solve_scalar(outer_psi_prime, cfg, tau);
    CHECK(abs(again - tau) < eps_digits(cfg.target_digits));
}

TEST_CASE("solve_scalar residual survives doubled precision") {
    Real r;
    {
        PrecisionScope p(40);
        r = solve_scalar([](const Real& x) { return x * x * x - 2; }, SolverConfig::in(Real(1), Real(2)));
    }
    PrecisionScope p(80);
    Real hi(r, 80);
    CHECK(abs(hi * hi * hi - 2) < eps_digits(30 - 2));
}

TEST_CASE("solve_scalar errors") {
    PrecisionScope p(40);
    CHECK_THROWS_AS(solve_scalar([](const Real& x) { return x * x + 1; }, SolverConfig::in(Real(0), Real(1))),
                    NoSignChange);
    SolverConfig cfg;
    cfg.target_digits = 30;
    cfg.max_iterations = 3;
    CHECK_THROWS_AS(solve_scalar([](const Real& x) { return x * x + 1; }, cfg, Real("0.5")), NoConvergence);
}

TEST_CASE("solve_system2 trivial") {
    PrecisionScope p(50);
    auto cfg = SolverConfig::standard();
    auto r = solve_system2([](const Real& a, const Real& b) { return std::array<Real, 2>{a - b, a + b - 2}; },
                           {Real(0), Real(0)}, cfg);
    CHECK(abs(r[0] - 1) < eps_digits(cfg.target_digits));
    CHECK(abs(r[1] - 1) < eps_digits(cfg.target_digits));
}

TEST_CASE("solve_system2 singular jacobian") {
    PrecisionScope p(40);
    CHECK_THROWS_AS(solve_system2([](const Real& a, const Real& b) { return std::array<Real, 2>{a + b - 1, 2 * a + 2 * b - 3}; },
                                  {Real(0), Real(0)}, SolverConfig::standard()),
                    SingularJacobian);
}

TEST_CASE("differentiate polynomials exactly") {
    PrecisionScope p(60);
    auto cfg = SolverConfig::standard();
    CHECK(abs(differentiate([](const Real& x) { return x * x; }, Real(3), cfg) - 6) < eps_digits(cfg.target_digits / 2));
    auto quartic = [](const Real& x) { return 3 * pow(x, 4) - x * x * x + 2 * x - 7; };
    Real x0("0.7");
    Real exact = 12 * pow(x0, 3) - 3 * x0 * x0 + 2;
    CHECK(abs(differentiate(quartic, x0, cfg) - exact) < eps_digits(cfg.target_digits / 2));
}

TEST_CASE("gauss legendre integrates to working precision") {
    PrecisionScope p(60);
    Real v = integrate([](const Real& x) { return exp(x); }, Real(0), Real(1), 50);
    CHECK(abs(v - (exp(Real(1)) - 1)) < eps_digits(50));
    Real pi4 = integrate([](const Real& x) { return 1 / (1 + x * x); }, Real(0), Real(1), 50);
    CHECK(abs(4 * pi4 - real_pi()) < eps_digits(50));
}

TEST_CASE("polyfit recovers a cubic") {
    PrecisionScope p(50);
    std::vector<Real> xs, ys;
    for (int i = 0; i < 10; ++i) {
        Real x = Real(i) / 7;
        xs.push_back(x);
        ys.push_back(1 - 2 * x + 3 * x * x * x);
    }
    auto c = polyfit(xs, ys, 3);
    CHECK(abs(c[0] - 1) < Real("1e-40"));
    CHECK(abs(c[1] + 2) < Real("1e-40"));
    CHECK(abs(c[2]) < Real("1e-40"));
    CHECK(abs(c[3] - 3) < Real("1e-40"));
}

TEST_CASE("solver config validation") {
    PrecisionScope p(40);
    SolverConfig cfg;
    cfg.target_digits = 35;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    CHECK_THROWS_AS(SolverConfig::in(Real(1), Real(0)).validate(), NoSignChange);
}
