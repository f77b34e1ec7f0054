#include "degdist/distribution.hpp"

#include "degdist/errors.hpp"
#include "degdist/numerics.hpp"

namespace degdist {

std::string family_name(Family f) {
    switch (f) {
        case Family::Outerplanar: return "outerplanar";
        case Family::SeriesParallel: return "series-parallel";
        case Family::Planar: return "planar";
    }
    return "?";
}

std::string level_name(Level l) {
    switch (l) {
        case Level::Connected: return "connected";
        case Level::TwoConnected: return "2conn";
        case Level::ThreeConnected: return "3conn";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "outerplanar" || s == "outer") return Family::Outerplanar;
    if (s == "series-parallel" || s == "sp" || s == "seriesparallel") return Family::SeriesParallel;
    if (s == "planar") return Family::Planar;
    throw UsageError("unknown family '" + s + "'");
}

Level parse_level(const std::string& s) {
    if (s == "connected" || s == "conn" || s == "1") return Level::Connected;
    if (s == "2conn" || s == "2" || s == "2-connected") return Level::TwoConnected;
    if (s == "3conn" || s == "3" || s == "3-connected") return Level::ThreeConnected;
    throw UsageError("unknown level '" + s + "'");
}

Real TailModel::leading(int k) const {
    Real kk(k);
    Real v = c * pow(kk, exponent) * pow(q, k);
    if (!c2.is_zero()) v *= exp(c2 * sqrt(kk));
    return v;
}

Real TailModel::eval(int k) const {
    Real corr = 1;
    Real kk(k);
    for (std::size_t j = 0; j < corrections.size(); ++j)
        corr += corrections[j] * pow(kk, -step * static_cast<long>(j + 1));
    return leading(k) * corr;
}

Real TailModel::tail_sum(int K, int digits) const {
    Real acc = 0, eps = eps_digits(digits);
    for (int k = K + 1; k < K + 200000; ++k) {
        Real t = eval(k);
        acc += t;
        if (abs(t) < eps * (1 + abs(acc)) && k > K + 10) break;
    }
    return acc;
}

Real TailModel::tail_moment(int K, int digits) const {
    Real acc = 0, eps = eps_digits(digits);
    for (int k = K + 1; k < K + 200000; ++k) {
        Real t = eval(k) * k;
        acc += t;
        if (abs(t) < eps * (1 + abs(acc)) && k > K + 10) break;
    }
    return acc;
}

Real DegreeDistribution::partial_sum() const {
    Real s = 0;
    for (const auto& x : d) s += x;
    return s;
}

Real DegreeDistribution::total(int digits) const {
    Real s = partial_sum();
    if (!tail.q.is_zero()) s += tail.tail_sum(k_max(), digits);
    return s;
}

Real DegreeDistribution::mean(int digits) const {
    Real s = 0;
    for (int k = 0; k <= k_max(); ++k) s += d[k] * k;
    if (!tail.q.is_zero()) s += tail.tail_moment(k_max(), digits);
    return s;
}

std::vector<Real> DegreeDistribution::cumulative() const {
    std::vector<Real> c(d.size());
    Real s = 0;
    for (std::size_t k = 0; k < d.size(); ++k) c[k] = (s += d[k]);
    return c;
}

TailModel fit_tail(const std::vector<Real>& d, int k_lo, int k_hi, const Real& exponent, const Real& q,
                   int n_corrections, const Real& c2, const Real& step) {
    if (k_hi >= static_cast<int>(d.size()) || k_lo < 1 || k_hi - k_lo < n_corrections + 1)
        throw DomainError("fit_tail: bad fitting window");
    TailModel m;
    m.c = 1;
    m.exponent = exponent;
    m.q = q;
    m.c2 = c2;
    m.step = step;
    // d_k / leading_k = c + sum_j (c b_j) k^(-j step)
    std::vector<std::vector<Real>> A;
    std::vector<Real> b;
    for (int k = k_lo; k <= k_hi; ++k) {
        std::vector<Real> row;
        row.emplace_back(1);
        for (int j = 1; j <= n_corrections; ++j) row.push_back(pow(Real(k), -step * j));
        A.push_back(std::move(row));
        b.push_back(d[k] / m.leading(k));
    }
    auto sol = least_squares(A, b);
    m.c = sol[0];
    for (int j = 1; j <= n_corrections; ++j) m.corrections.push_back(sol[j] / sol[0]);
    return m;
}

Real fit_residual(const std::vector<Real>& d, int k_lo, int k_hi, const TailModel& m) {
    Real s = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        Real r = (m.eval(k) - d[k]) / d[k];
        s += r * r;
    }
    return sqrt(s / (k_hi - k_lo + 1));
}

Real fit_ratio_q(const std::vector<Real>& d, int k_lo, int k_hi, int n_terms) {
    std::vector<std::vector<Real>> A;
    std::vector<Real> b;
    for (int k = k_lo; k < k_hi; ++k) {
        std::vector<Real> row;
        for (int j = 0; j < n_terms; ++j) row.push_back(pow(Real(k), -j));
        A.push_back(std::move(row));
        b.push_back(d[k + 1] / d[k]);
    }
    return least_squares(A, b)[0];
}

}  // namespace degdist
