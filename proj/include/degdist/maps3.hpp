#pragma once

#include "degdist/numerics.hpp"
#include "degdist/series.hpp"

#include <array>
#include <map>
#include <tuple>
#include <vector>

namespace degdist {

struct MapGfPoint {
    Real X, Y, W;
    Real R, S;
    Real F1;
    Real w;
    Real Q;
};

// Small-branch solution of R = X(S+1)^2, S = Y(R+1)^2.
std::array<Real, 2> solve_RS(const Real& X, const Real& Y);

// The polynomials w1, w2 in (R, S, W); generic in the scalar type.
template <class V>
V map_w1(const V& R, const V& S, const V& W) {
    V s2 = S * S, r2 = R * R;
    return -(R * S * W * W) +
           W * (s2 * 5L + S * 4L + R * s2 * 3L + r2 + R * 2L + s2 * S * 2L + r2 * S * 3L + R * S * 7L + 1L) +
           (R + 1L) * (R + 1L) * (R + S * 2L + s2 + 1L);
}

template <class V>
V map_w2(const V& R, const V& S, const V& W) {
    V s2 = S * S, r2 = R * R;
    V a = R + S * 2L + s2 + 1L;
    return r2 * s2 * W * W -
           W * R * S * (r2 * S * 2L + R * S * 6L + s2 * S * 2L + R * s2 * 3L + s2 * 5L + r2 + R * 2L + S * 4L + 1L) * 2L +
           (R + 1L) * (R + 1L) * a * a;
}

// Root of the root-valency quadratic on the counting branch. The numerator
// combination is w1 - (R-W+1) sqrt(w2); the printed version has the overall
// sign of the numerator flipped (see w_root_printed).
Real w_root(const Real& R, const Real& S, const Real& W);
Real w_root_printed(const Real& R, const Real& S, const Real& W);
// Residual of Y(1-w)(X-wF1)W - wF1(-XYW^2+XYW-XW+1-w+X).
Real w_quadratic_residual(const MapGfPoint& p);

MapGfPoint Q_eval(const Real& X, const Real& Y, const Real& W);

// T•(x, z, w) for directed edge-rooted 3-connected planar graphs.
Real T_root(const Real& x, const Real& z, const Real& w);
// (x w / 2) Q(xz, z, w), the map-counting form of the same function.
Real T_root_via_Q(const Real& x, const Real& z, const Real& w);

// Trivariate rational series, nesting X (outer), Y, W (inner).
using TriSeries = Series<Series<Series<Rational>>>;

struct QuadOracle {
    TriSeries Q_closed;  // closed form for Q expanded formally
    TriSeries Q_iter;    // Q from the quadratic solved by series iteration
    TriSeries w_closed;
    TriSeries w_iter;
};
// Orders are per variable (rectangular truncation).
QuadOracle quad_system_oracle(int Nx, int Ny, int Nw);

// Coefficients t[(i,j,k)] = [x^i z^j w^k] T• for i <= n_max, computed from
// the closed form with exact series arithmetic.
using TCoeffs = std::map<std::tuple<int, int, int>, Rational>;
TCoeffs T_root_coefficients(int n_max);
// The same coefficients from the map form (x w / 2) Q(xz, z, w) where Q is
// obtained by the quadratic iteration.
TCoeffs T_root_coefficients_via_quadratic(int n_max);

}  // namespace degdist
