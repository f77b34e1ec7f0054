#pragma once

#include "degdist/errors.hpp"
#include "degdist/real.hpp"

#include <array>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace degdist {

struct SolverConfig {
    int target_digits = 40;
    int max_iterations = 200;
    std::optional<std::pair<Real, Real>> bracket;

    // Default target: working precision minus ten digits.
    static SolverConfig standard();
    static SolverConfig in(Real lo, Real hi);
    void validate() const;
};

using ScalarFn = std::function<Real(const Real&)>;
using PairFn = std::function<std::array<Real, 2>(const Real&, const Real&)>;

// Root of f. With a sign-changing bracket this is a safeguarded Newton
// iteration (bisection whenever a Newton step leaves the bracket). Without a
// sign change an initial guess is required.
Real solve_scalar(const ScalarFn& f, const SolverConfig& cfg,
                  std::optional<Real> guess = std::nullopt);

// Newton iteration for F(a,b)=0 with a central-difference Jacobian and step
// halving on residual growth.
std::array<Real, 2> solve_system2(const PairFn& F, std::array<Real, 2> initial,
                                  const SolverConfig& cfg);

struct Derivative {
    Real value;
    Real error;
};

// Central differences with Richardson extrapolation (Ridders' tableau).
Derivative differentiate_with_error(const ScalarFn& f, const Real& x, const SolverConfig& cfg,
                                    std::optional<Real> initial_step = std::nullopt);
Real differentiate(const ScalarFn& f, const Real& x, const SolverConfig& cfg,
                   std::optional<Real> initial_step = std::nullopt);

// Gauss-Legendre rule on [-1,1], computed at the current working precision.
struct GaussRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};
const GaussRule& gauss_legendre(int n);

// Integral of f over [a,b] with an n-point Gauss-Legendre rule.
template <class F>
auto integrate_gauss(F&& f, const Real& a, const Real& b, int n) {
    const GaussRule& g = gauss_legendre(n);
    Real half = (b - a) / 2, mid = (a + b) / 2;
    auto acc = f(mid + half * g.nodes[0]) * (g.weights[0] * half);
    for (std::size_t i = 1; i < g.nodes.size(); ++i)
        acc = acc + f(mid + half * g.nodes[i]) * (g.weights[i] * half);
    return acc;
}

// Adaptive doubling of the Gauss order until two successive estimates agree.
Real integrate(const ScalarFn& f, const Real& a, const Real& b, int target_digits);

// Least-squares solution of A x = b (rows >= cols) via Householder QR.
std::vector<Real> least_squares(std::vector<std::vector<Real>> A, std::vector<Real> b);

// Coefficients c_0..c_deg of the least-squares polynomial through (xs, ys).
std::vector<Real> polyfit(const std::vector<Real>& xs, const std::vector<Real>& ys, int deg);

}  // namespace degdist
