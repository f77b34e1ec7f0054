#pragma once

#include "degdist/distribution.hpp"
#include "degdist/numerics.hpp"
#include "degdist/series.hpp"

#include <array>
#include <vector>

namespace degdist {

using RSeries = Series<Real>;

struct PlanarConstants {
    Real r1;  // r(1) = (7 sqrt7 - 17)/32
    Real u0;  // (sqrt7 - 1)/3
    Real t0;
    Real R1;  // R(1)
    Real E0;
    Real rho;
    Real q3;  // sqrt7 - 2
    Real q2;  // 1/w3 through the D0 equation
    Real q1;  // 1/w3 through the direct functions
    Real alpha3;  // (7 + sqrt7)/2
    Real kappa;
    // tail constants fitted on [32, 64]: c3 for e_k ~ c k^(1/2) q^k,
    // c2 and c1 for d_k ~ c k^(-1/2) q^k
    Real c3, c2, c1;
};

// ---- u, v and the 3-connected singular expansion -----------------------

Real u0_tilde(const Real& z);  // -1/3 + sqrt(4/9 + 1/(3z))
Real r_of_z(const Real& z);
Real tau_of_x(const Real& x);  // inverse of r
Real u0_of_x(const Real& x);   // root u > 1/3 of x = (1+u)(3u-1)^3/(16u)

struct UVExpansion {
    std::array<Real, 4> u, v;
};
// Coefficients in Z = sqrt(1 - z/tau(x)) at fixed x (printed closed forms).
UVExpansion uv_expansion_x(const Real& x);
// Coefficients in X = sqrt(1 - x/r(z)) at fixed z (printed closed forms).
UVExpansion uv_expansion_z(const Real& z);
// u_1(x) from the generic square-root singularity formula -sqrt(2 z0 Phi_z / Phi_uu).
Real u1_implicit(const Real& x);
// Finite-sampling fit of u(x,z), v(x,z) near z = tau(x) in powers of Z.
UVExpansion uv_fit_x(const Real& x);

// T•(x,z,w) with u, v supplied (u = xz(1+v)^2, v = z(1+u)^2).
Real T_from_uv(const Real& x, const Real& z, const Real& w, const Real& u, const Real& v);

template <class V>
struct TSing {
    V T0, T2, T3;
};
// T0, T2, T3 in terms of u = u0(x). With printed_sign the P3 term of T3
// enters with the sign as printed; by default the sign is the one that
// matches the expansion of T•.
TSing<Real> T_singular_coeffs(const Real& u, const Real& w, bool printed_sign = false);
TSing<RSeries> T_singular_series(const Real& u, int K, bool printed_sign = false);
// Fit oracle: sample T•(x,z,w) at z = tau(x)(1-Z^2) and fit in Z.
std::array<Real, 4> T_fit(const Real& x, const Real& w);  // T0, T1, T2, T3

// ---- networks and their singular coefficients -------------------------

Real t_of_y(const Real& y);  // y(t) with the (1+2t) numerator
Real y_of_t(const Real& t);

struct DSing {
    Real D0, D2, D3;
};
// D0 from its implicit equation (continued from D0(y,0) = 0); D2, D3 from
// the closed forms.
DSing D_singular_coeffs(const Real& y, const Real& w);
DSing E_coeffs(const Real& y);  // D_i(y,1)
RSeries D0_wseries(const Real& y, int K);
// w3 with D0(y,w3) = t/(1-t), the dominant w-singularity.
Real w3_of_y(const Real& y);
// The same singularity from the direct functions: D(R,y,w)/E0 reaching the
// branch point of T• in its third argument.
Real w3_direct(const Real& y);
// Closed-form candidate exp((t0-1)(t0+6)/(6t0^2+20t0+6)) for the 2-connected q.
Real q2_printed(const Real& t0);

struct IPrinted {
    Real I00, I02, I03, I22, I23, I33;
};
IPrinted I_coeffs_printed(const Real& y, const Real& w, const Real& alpha);
struct BSing {
    Real B0, B2, B3;
};
BSing B_singular_printed(const Real& y, const Real& w, const Real& alpha);
// alpha such that the printed B3(y,1) equals the structural B3(y,1); throws
// DomainError when no positive alpha exists.
Real fit_alpha(const Real& y);

// ---- direct functions and the critical composition --------------------

struct PlanarCritical {
    Real R, E0;
};
PlanarCritical planar_critical(const Real& y);
Real R_of_y(const Real& y);
Real rho_of_y(const Real& y);

Real solve_E_planar(const Real& x, const Real& y);
Real solve_D_planar(const Real& x, const Real& y, const Real& w);
// Closed-form primitive of T•(x,z,t)/t on [0,w].
Real integral_T(const Real& x, const Real& z, const Real& w);
Real integral_T_numeric(const Real& x, const Real& z, const Real& w);
Real broot_planar(const Real& x, const Real& y, const Real& w);

// Singular coefficients of B•(x,y,w) in X = sqrt(1 - x/R(y)), obtained by
// expanding B• in w at sample points x = R(1-X^2) and fitting in X.
struct BExpansion {
    Real y, R, E0;
    std::array<RSeries, 4> B;  // B0..B3 as series in w
    std::array<Real, 4> B_at1;  // B0..B3 at w = 1
    std::array<Real, 4> D_at1;  // D0..D3 at w = 1 (= E_i)
};
BExpansion B_expansion(const Real& y, int K);
// Fit oracle for D(x,y,w) near x = R(y) at a scalar w.
std::array<Real, 4> D_fit(const Real& y, const Real& w);

// ---- distributions ----------------------------------------------------

struct ThreeConnDist {
    DegreeDistribution e;
    DegreeDistribution d;
};
ThreeConnDist pgf_planar_3conn(int K);
DegreeDistribution pgf_planar_2conn(int K);
DegreeDistribution pgf_planar_conn(int K);
// Edge-density conditioned distributions. The saddle point is solved in y
// (connected: rho(y); 2-connected: R(y)) resp. in z for 3-connected graphs.
DegreeDistribution density_pgf(Level level, const Real& mu, int K);
// Saddle abscissa mu at y = 1 (resp. z = 1).
Real density_mu_at_one(Level level);
// Parameter y (or z) solving the saddle equation for mu.
Real density_parameter(Level level, const Real& mu);

PlanarConstants constants_planar();

// ---- exact pipeline (y = 1) -------------------------------------------

// counts[n][k] = n! [x^n w^k]: rooted at an unlabeled vertex of degree k,
// so row n corresponds to graphs on n+1 vertices.
std::vector<std::vector<BigInt>> planar_rooted_counts(int n_max);
std::vector<std::vector<BigInt>> planar_2conn_rooted_counts(int n_max);
// B•(x,1,w) exactly, through x^N.
BiSeries<Rational> planar_broot_series(int N);

}  // namespace degdist
