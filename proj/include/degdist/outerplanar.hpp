#pragma once

#include "degdist/distribution.hpp"
#include "degdist/numerics.hpp"
#include "degdist/series.hpp"

#include <vector>

namespace degdist {

struct OuterConstants {
    Real tau;
    Real rho;
    Real radiusB;  // 3 - 2 sqrt 2
    Real q;        // 2 D(tau) - tau
    Real c1;       // analytic saddle-point constant
    Real c2;       // sqrt(2 tau / q)
};

// Dissections: D(x) = (1 + x - sqrt(1 - 6x + x^2)) / 4.
Series<Rational> dissection_gf(int N);
Real dissection_value(const Real& x);
Real dissection_derivative(const Real& x);
Real outer_bprime(const Real& x);  // B'(x) = (1 + 5x - sqrt(1-6x+x^2)) / 8

// Root-degree coefficients B_1(x) .. B_Nw(x) of B•(x, w).
Series<Real> broot_outer(const Real& x, int Nw);

OuterConstants constants_outer(const SolverConfig& cfg);

DegreeDistribution pgf_outer_2conn(int K);
DegreeDistribution pgf_outer_conn(int K);
// The explicit p(w) exactly as displayed in the Hayman argument (kept for
// the discrepancy report; it drops part of the x-derivative).
DegreeDistribution pgf_outer_conn_printed(int K);

// Real-valued p(w) for the connected family; V is Real or a w-jet.
template <class V>
V outer_conn_pgf(const OuterConstants& oc, const V& w) {
    Real g = oc.q;
    Real gp = 2 * dissection_derivative(oc.tau) - 1;
    V one_m = 1L - w * g;
    V bb = w * oc.tau + (w * w * oc.tau * g / 2L) / one_m;
    V bx = w + (w * w / 2L) * (g / one_m + (oc.tau * gp) / (one_m * one_m));
    return exp(bb) * bx * oc.rho;
}

struct HaymanResult {
    Real saddle;    // r_k
    Real estimate;  // p(r) r^-k / sqrt(2 pi b(r))
    Real fitted;    // c1 k^(1/4) exp(c2 sqrt k) q^k with the analytic constants
};
HaymanResult hayman_estimate_outer(int k, const OuterConstants& oc);

// Tail fit of (c1, c2) on k in [k_lo, k_hi] with q known.
struct OuterFit {
    Real c1;
    Real c2;
    Real residual;
};
OuterFit fit_outer_c1c2(const DegreeDistribution& dist, int k_lo, int k_hi, int n_corrections);
// c1 with c2 held at a given value (linear fit only).
OuterFit fit_outer_c1(const DegreeDistribution& dist, int k_lo, int k_hi, const Real& c2, int n_corrections);

// Exact pipeline: counts[n][k] = n! [x^n w^k] e^{B•(x C'(x), w)}, i.e. the
// number of connected outerplanar graphs on n+1 labelled vertices in which
// one fixed vertex has degree k.
std::vector<std::vector<BigInt>> outer_rooted_counts(int n_max);
// Same for 2-connected graphs: n! [x^n w^k] B•(x, w).
std::vector<std::vector<BigInt>> outer_2conn_rooted_counts(int n_max);
// Coefficients of C'(x) = e^{B'(x C'(x))} computed two ways (self-consistency).
Series<Rational> outer_cprime_series(int N);

}  // namespace degdist
