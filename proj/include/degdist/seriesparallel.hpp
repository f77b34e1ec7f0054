#pragma once

#include "degdist/distribution.hpp"
#include "degdist/numerics.hpp"
#include "degdist/series.hpp"

#include <array>
#include <vector>

namespace degdist {

struct SpConstants {
    Real R1;  // R(1)
    Real tau;
    Real rho;
    Real E0;  // E_0(1)
    Real E1;
    Real w0;  // closed form, 2-connected w-singularity
    Real w1;  // closed form from the proof, connected w-singularity
    Real q_conn;
    Real q_2conn;
    Real E_tau;  // E(tau, 1)
    Real kappa;  // d_2 / (2 d_1)
};

// E(x,y): log((1+E)/(1+y)) = x E^2 / (1+xE), continued from E(0,y) = y.
Real solve_E_sp(const Real& x, const Real& y);
Real sp_E_x(const Real& x, const Real& E);  // dE/dx
// D(x,y,w): log((1+D)/(1+yw)) = x E D / (1+xE), branch D(x,y,0) = 0.
Real solve_D_sp(const Real& x, const Real& y, const Real& w);
Real broot_sp(const Real& x, const Real& y, const Real& w);
Real sp_bprime(const Real& x, const Real& y);  // B•(x,y,1)

// (R(y), E0(y)) from Phi = Phi_z = 0.
std::array<Real, 2> sp_critical(const Real& y);

struct SpSingular {
    Real R, E0, E1, D0, D1, B0, B1;
};
SpSingular sp_singular_coeffs(const Real& y, const Real& w);
// The printed closed forms that tie R(y) and E0(y) together; returns
// (R from the printed closed form, residual of the printed E0 relation).
std::array<Real, 2> sp_printed_R_relations(const Real& y);

// tau(y), rho(y) for connected SP graphs with edge weight y.
std::array<Real, 2> sp_tau_rho(const Real& y);

SpConstants constants_sp(const SolverConfig& cfg);

// w-singularities found directly as the point where the w-solver's Jacobian
// vanishes (solve_system2 on Psi = Psi_z = 0 resp. Xi = Xi_z = 0).
Real sp_w0_direct(const SpConstants& sc);
Real sp_w1_direct(const SpConstants& sc);
// The connected q with exponent -1/(tau E) instead of -1/(1 + tau E).
Real sp_q_conn_printed(const SpConstants& sc);

DegreeDistribution pgf_sp_2conn(int K);
DegreeDistribution pgf_sp_conn(int K);

// Exact pipelines (y = 1): counts[n][k] = n! [x^n w^k] of C• resp. B•.
std::vector<std::vector<BigInt>> sp_rooted_counts(int n_max);
std::vector<std::vector<BigInt>> sp_2conn_rooted_counts(int n_max);
// D(x,1,w) two ways: closed equation vs the parallel/series network system.
std::array<BiSeries<Rational>, 2> sp_network_series(int N);
// B•(x,1,w) two ways: closed form vs x * integral of e^S dw.
std::array<BiSeries<Rational>, 2> sp_broot_series(int N);

}  // namespace degdist
