#include "degdist/outerplanar.hpp"

#include "degdist/errors.hpp"

namespace degdist {

namespace {

using QS = Series<Rational>;
using QB = BiSeries<Rational>;

Real disc(const Real& x) { return sqrt(1 - 6 * x + x * x); }

Real bsecond(const Real& x) { return (5 + (3 - x) / disc(x)) / 8; }

QS bprime_series(int N) {
    QS r("x", std::vector<Rational>{Rational(1), Rational(-6), Rational(1)});
    r = set_order(r, N);
    QS s = sqrt(r);
    QS b = (QS::constant("x", N, Rational(1)) + QS::variable("x", N) * Rational(5) - s) / Rational(8);
    return b;
}

// B•(x,w) as a series in x whose coefficients are polynomials in w.
QB broot_exact(int N, int Nw) {
    QS d = dissection_gf(N);
    QS x = QS::variable("x", N);
    QS g = d * Rational(2) - x;
    QS w0("w", Nw);
    QB b("x", N, w0);
    // B_1 = x, B_k = (x/2) g^(k-1) for k >= 2.
    std::vector<QS> bk(Nw + 1, QS("x", N));
    if (Nw >= 1) bk[1] = x;
    QS gp = QS::constant("x", N, Rational(1));
    for (int k = 2; k <= Nw; ++k) {
        gp = gp * g;
        bk[k] = x * gp / Rational(2);
    }
    for (int n = 0; n <= N; ++n)
        for (int k = 1; k <= Nw; ++k) b[n][k] = bk[k][n];
    return b;
}

std::vector<std::vector<BigInt>> to_counts(const QB& s, int n_max) {
    std::vector<std::vector<BigInt>> out(n_max + 1);
    Rational fact = 1;
    for (int n = 0; n <= n_max; ++n) {
        if (n > 0) fact *= n;
        out[n].resize(s[n].order() + 1);
        for (int k = 0; k <= s[n].order(); ++k) {
            Rational v = s[n][k] * fact;
            if (denominator(v) != 1) throw DomainError("non-integral count");
            out[n][k] = numerator(v);
        }
    }
    return out;
}

}  // namespace

Series<Rational> dissection_gf(int N) {
    QS r = set_order(QS("x", std::vector<Rational>{Rational(1), Rational(-6), Rational(1)}), N);
    QS one_plus_x = set_order(QS("x", std::vector<Rational>{Rational(1), Rational(1)}), N);
    return (one_plus_x - sqrt(r)) / Rational(4);
}

Real dissection_value(const Real& x) { return (1 + x - disc(x)) / 4; }
Real dissection_derivative(const Real& x) { return (1 - (x - 3) / disc(x)) / 4; }
Real outer_bprime(const Real& x) { return (1 + 5 * x - disc(x)) / 8; }

Series<Real> broot_outer(const Real& x, int Nw) {
    if (!(x > 0) || !(x < 3 - 2 * sqrt(Real(2)))) throw OutsideDisk("broot_outer: x outside (0, 3-2sqrt2)");
    Real g = 2 * dissection_value(x) - x;
    if (g >= 1) throw OutsideDisk("broot_outer: 2D(x)-x >= 1");
    Series<Real> b("w", Nw);
    if (Nw >= 1) b[1] = x;
    Real gp = 1;
    for (int k = 2; k <= Nw; ++k) {
        gp *= g;
        b[k] = x / 2 * gp;
    }
    return b;
}

OuterConstants constants_outer(const SolverConfig& cfg) {
    OuterConstants oc;
    oc.radiusB = 3 - 2 * sqrt(Real(2));
    SolverConfig c = cfg;
    c.bracket = std::make_pair(Real("0.01"), oc.radiusB - eps_digits(working_digits() / 2));
    oc.tau = solve_scalar([](const Real& u) { return 1 - u * bsecond(u); }, c);
    oc.rho = oc.tau * exp(-outer_bprime(oc.tau));
    oc.q = 2 * dissection_value(oc.tau) - oc.tau;
    Real gp = 2 * dissection_derivative(oc.tau) - 1;
    // Near w = 1/q: p(w) ~ K (1-qw)^-2 exp(a/(1-qw)); saddle point of the
    // Cauchy integral gives c1 = K e^(a/2) a^(-3/4) / (2 sqrt(pi)), c2 = 2 sqrt(a).
    Real a = oc.tau / (2 * oc.q);
    Real K = oc.rho * oc.tau * gp / (2 * oc.q * oc.q);
    oc.c1 = K * exp(a / 2) * pow(a, Real(-3) / 4) / (2 * sqrt(real_pi()));
    oc.c2 = 2 * sqrt(a);
    return oc;
}

DegreeDistribution pgf_outer_2conn(int K) {
    if (K < 2) throw DomainError("pgf_outer_2conn: K >= 2 required");
    DegreeDistribution dist;
    dist.family = Family::Outerplanar;
    dist.level = Level::TwoConnected;
    Real s2 = sqrt(Real(2));
    // p(w) = (1-q)^2 w^2 / (1-qw)^2, so d_k = (1-q)^2 (k-1) q^(k-2)
    Real q = s2 - 1, c = 2 * (3 - 2 * s2);
    dist.d.assign(K + 1, Real(0));
    for (int k = 2; k <= K; ++k) dist.d[k] = c * (k - 1) * pow(q, k - 2);
    // c (k-1) q^(k-2) = (c/q^2) k q^k (1 - 1/k)
    dist.tail.c = c / (q * q);
    dist.tail.exponent = 1;
    dist.tail.q = q;
    dist.tail.corrections = {Real(-1)};
    return dist;
}

DegreeDistribution pgf_outer_conn(int K) {
    if (K < 1) throw DomainError("pgf_outer_conn: K >= 1 required");
    OuterConstants oc = constants_outer(SolverConfig::standard());
    Series<Real> w = Series<Real>::variable("w", K);
    Series<Real> p = outer_conn_pgf(oc, w);
    DegreeDistribution dist;
    dist.family = Family::Outerplanar;
    dist.level = Level::Connected;
    dist.d = p.coeffs();
    if (K >= 40) {
        int hi = K, lo = K / 2;
        dist.tail = fit_tail(dist.d, lo, hi, Real(1) / 4, oc.q, 6, oc.c2, Real(1) / 2);
    } else {
        dist.tail.c = oc.c1;
        dist.tail.exponent = Real(1) / 4;
        dist.tail.q = oc.q;
        dist.tail.c2 = oc.c2;
    }
    return dist;
}

DegreeDistribution pgf_outer_conn_printed(int K) {
    OuterConstants oc = constants_outer(SolverConfig::standard());
    Real g = oc.q, gp = 2 * dissection_derivative(oc.tau) - 1;
    Series<Real> w = Series<Real>::variable("w", K);
    Series<Real> one_m = 1L - w * g;
    Series<Real> pre = (w * w) * (oc.rho * oc.tau * g * gp) / (one_m * one_m * 2L);
    Series<Real> ex = exp(w * oc.tau + (w * w) * (oc.tau * g) / (one_m * 2L));
    DegreeDistribution dist;
    dist.family = Family::Outerplanar;
    dist.level = Level::Connected;
    dist.d = (pre * ex).coeffs();
    return dist;
}

HaymanResult hayman_estimate_outer(int k, const OuterConstants& oc) {
    if (k < 5) throw DomainError("hayman_estimate_outer: k >= 5 required");
    auto jets = [&](const Real& r) {
        Series<Real> w = Series<Real>::variable("e", 2) + r;
        Series<Real> p = outer_conn_pgf(oc, w);
        Real a = r * p[1] / p[0];
        Real b = r * r * 2 * p[2] / p[0] + a - a * a;
        return std::array<Real, 3>{p[0], a, b};
    };
    SolverConfig cfg = SolverConfig::standard();
    cfg.bracket = std::make_pair(Real("1e-6"), (1 - eps_digits(8)) / oc.q);
    Real r = solve_scalar([&](const Real& x) { return jets(x)[1] - k; }, cfg);
    auto j = jets(r);
    HaymanResult h;
    h.saddle = r;
    h.estimate = j[0] * pow(r, -k) / sqrt(2 * real_pi() * j[2]);
    Real kk(k);
    h.fitted = oc.c1 * pow(kk, Real(1) / 4) * exp(oc.c2 * sqrt(kk)) * pow(oc.q, k);
    return h;
}

OuterFit fit_outer_c1c2(const DegreeDistribution& dist, int k_lo, int k_hi, int n_corrections) {
    const Real& q = dist.tail.q;
    auto resid = [&](const Real& c2) {
        TailModel m = fit_tail(dist.d, k_lo, k_hi, Real(1) / 4, q, n_corrections, c2, Real(1) / 2);
        return fit_residual(dist.d, k_lo, k_hi, m);
    };
    // Golden-section search for c2; c1 and the corrections are linear.
    Real a("0.5"), b("1.5");
    const Real gr = (sqrt(Real(5)) - 1) / 2;
    Real x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    Real f1 = resid(x1), f2 = resid(x2);
    for (int it = 0; it < 120 && b - a > eps_digits(working_digits() / 2); ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = resid(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = resid(x2);
        }
    }
    return fit_outer_c1(dist, k_lo, k_hi, (a + b) / 2, n_corrections);
}

OuterFit fit_outer_c1(const DegreeDistribution& dist, int k_lo, int k_hi, const Real& c2, int n_corrections) {
    TailModel m = fit_tail(dist.d, k_lo, k_hi, Real(1) / 4, dist.tail.q, n_corrections, c2, Real(1) / 2);
    return OuterFit{m.c, c2, fit_residual(dist.d, k_lo, k_hi, m)};
}

Series<Rational> outer_cprime_series(int N) {
    QS bp = bprime_series(N);
    QS x = QS::variable("x", N);
    QS F = fixed_point([&](const QS& f) { return x * exp(compose(bp, f)); }, QS("x", N));
    return shift_down(F, 1);
}

std::vector<std::vector<BigInt>> outer_rooted_counts(int n_max) {
    const int N = n_max, Nw = n_max + 1;
    QS bp = bprime_series(N + 1);
    QS x = QS::variable("x", N + 1);
    QS F = fixed_point([&](const QS& f) { return x * exp(compose(bp, f)); }, QS("x", N + 1));
    QB b = broot_exact(N + 1, Nw);
    QB c = exp(compose(b, F.truncate(N)));
    return to_counts(c, n_max);
}

std::vector<std::vector<BigInt>> outer_2conn_rooted_counts(int n_max) {
    // B• has x marking the non-root vertices.
    QB b = broot_exact(n_max, n_max + 1);
    return to_counts(b, n_max);
}

}  // namespace degdist
