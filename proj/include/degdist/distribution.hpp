#pragma once

#include "degdist/real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace degdist {

enum class Family { Outerplanar, SeriesParallel, Planar };
enum class Level { Connected, TwoConnected, ThreeConnected };

std::string family_name(Family f);
std::string level_name(Level l);
Family parse_family(const std::string& s);  // throws UsageError
Level parse_level(const std::string& s);

// d_k ~ c k^exponent exp(c2 sqrt(k)) q^k (1 + sum_j b_j k^(-j*step)).
struct TailModel {
    Real c = 0;
    Real exponent = 0;
    Real q = 0;
    Real c2 = 0;
    Real step = 1;
    std::vector<Real> corrections;

    Real eval(int k) const;
    Real leading(int k) const;
    // Sum of eval(k) over k > K until terms fall below 10^-digits.
    Real tail_sum(int K, int digits) const;
    Real tail_moment(int K, int digits) const;  // sum of k * eval(k)
};

struct DegreeDistribution {
    Family family = Family::Outerplanar;
    Level level = Level::Connected;
    std::optional<Real> mu;  // edge-density conditioning, if any
    std::vector<Real> d;     // d[0..k_max]
    TailModel tail;

    int k_max() const { return static_cast<int>(d.size()) - 1; }
    Real partial_sum() const;
    // Partial sum plus the tail model beyond k_max.
    Real total(int digits = 30) const;
    Real mean(int digits = 30) const;
    std::vector<Real> cumulative() const;
};

// Linear least squares fit of the correction model with known q, exponent
// and c2 on k in [k_lo, k_hi]. Returns the model with c and corrections set.
TailModel fit_tail(const std::vector<Real>& d, int k_lo, int k_hi, const Real& exponent, const Real& q,
                   int n_corrections, const Real& c2 = Real(0), const Real& step = Real(1));

// Residual of the fit above (root mean square of relative errors).
Real fit_residual(const std::vector<Real>& d, int k_lo, int k_hi, const TailModel& m);

// Estimate of q alone from the ratios d_{k+1}/d_k = q (1 + a_1/k + ...).
Real fit_ratio_q(const std::vector<Real>& d, int k_lo, int k_hi, int n_terms);

}  // namespace degdist
