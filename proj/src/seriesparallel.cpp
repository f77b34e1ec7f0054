#include "degdist/seriesparallel.hpp"

#include "degdist/errors.hpp"

namespace degdist {

namespace {

using QS = Series<Rational>;
using QB = BiSeries<Rational>;
using RS = Series<Real>;

Real e_residual(const Real& x, const Real& y, const Real& E) {
    return log((1 + E) / (1 + y)) - x * E * E / (1 + x * E);
}

// The residual of the D equation generic in the unknown's type.
template <class V>
V d_residual(const V& D, const Real& c, const V& one_plus_yw) {
    return log((D + 1L) / one_plus_yw) - D * c;
}

// Solves the D equation at fixed c = xE/(1+xE) as a w-series by Newton.
RS d_wseries(const Real& c, const Real& y, int K) {
    RS w = RS::variable("w", K);
    RS onep = w * y + 1L;
    BiSeries<Real> onep_d = BiSeries<Real>::constant("eps", 1, onep);
    RS guess = w * y;
    return newton_series(
        [&](const BiSeries<Real>& D) { return log((D + 1L) / onep_d) - D * c; }, guess,
        eps_digits(working_digits() - 8));
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

QS e_series(int N) {
    QS x = QS::variable("x", N);
    return fixed_point(
        [&](const QS& E) { return exp(x * E * E / (x * E + 1L)) * Rational(2) - 1L; },
        QS::constant("x", N, Rational(1)));
}

QB d_series(int N, int Nw) {
    QS E = e_series(N);
    QS x = QS::variable("x", N);
    QS c = x * E / (x * E + 1L);
    QS wvar = QS::variable("w", Nw);
    QB onep = QB::constant("x", N, wvar + 1L);
    QB cc("x", N, wvar);
    for (int n = 0; n <= N; ++n) cc[n] = QS::constant("w", Nw, c[n]);
    return fixed_point([&](const QB& D) { return onep * exp(cc * D) - 1L; }, QB::constant("x", N, wvar));
}

QB lift_x(const QS& s, const QS& proto) {
    QB r("x", s.order(), proto);
    for (int n = 0; n <= s.order(); ++n) r[n] = QS::constant(proto.var(), proto.order(), s[n]);
    return r;
}

QB broot_closed(int N, int Nw) {
    QS E = e_series(N);
    QS x = QS::variable("x", N);
    QB D = d_series(N, Nw);
    QB c = lift_x(x * E / (x * E + 1L), D[0]);
    QB xb = lift_x(x, D[0]);
    return xb * (D - c * D * (D * Rational(1, 2) + 1L));
}

}  // namespace

Real sp_E_x(const Real& x, const Real& E) {
    Real a = 1 + x * E;
    return (E * E / (a * a)) / (1 / (1 + E) - x * E * (2 + x * E) / (a * a));
}

Real solve_E_sp(const Real& x, const Real& y) {
    // Continuation in x from E(0,y) = y with Newton at each step.
    const int steps = 16;
    Real E = y;
    for (int s = 1; s <= steps; ++s) {
        Real xs = x * s / steps;
        for (int it = 0; it < 200; ++it) {
            Real a = 1 + xs * E;
            Real f = e_residual(xs, y, E);
            Real fp = 1 / (1 + E) - xs * E * (2 + xs * E) / (a * a);
            if (abs(fp) < Real("1e-4")) throw BeyondSingularity("solve_E_sp: Jacobian vanishes (x at or beyond R(y))");
            Real step = f / fp;
            E -= step;
            if (abs(step) < eps_digits(working_digits() - 5) * (1 + abs(E))) break;
            if (it == 199) throw NoConvergence("solve_E_sp: Newton did not converge");
        }
    }
    return E;
}

Real solve_D_sp(const Real& x, const Real& y, const Real& w) {
    Real E = solve_E_sp(x, y);
    Real c = x * E / (1 + x * E);
    Real D = y * w;
    for (int it = 0; it < 200; ++it) {
        Real f = log((1 + D) / (1 + y * w)) - c * D;
        Real fp = 1 / (1 + D) - c;
        if (abs(fp) < Real("1e-4")) throw BeyondSingularity("solve_D_sp: Jacobian vanishes");
        Real step = f / fp;
        D -= step;
        if (abs(step) < eps_digits(working_digits() - 5) * (1 + abs(D))) return D;
    }
    throw NoConvergence("solve_D_sp: Newton did not converge");
}

Real broot_sp(const Real& x, const Real& y, const Real& w) {
    Real E = solve_E_sp(x, y);
    Real D = solve_D_sp(x, y, w);
    Real c = x * E / (1 + x * E);
    return x * (D - c * D * (1 + D / 2));
}

Real sp_bprime(const Real& x, const Real& y) {
    Real E = solve_E_sp(x, y);
    Real c = x * E / (1 + x * E);
    return x * (E - c * E * (1 + E / 2));
}

std::array<Real, 2> sp_critical(const Real& y) {
    // Eliminating x from Phi_z = 0 gives xz = sqrt(1 + 1/z) - 1; a scalar
    // solve in z supplies the starting point of the 2-D Newton iteration.
    auto phi = [&](const Real& x, const Real& z) { return (1 + y) * exp(x * z * z / (1 + x * z)) - z - 1; };
    auto phi_z = [&](const Real& x, const Real& z) {
        Real a = 1 + x * z;
        return (1 + y) * exp(x * z * z / a) * x * z * (2 + x * z) / (a * a) - 1;
    };
    SolverConfig c1 = SolverConfig::standard();
    c1.bracket = std::make_pair(Real("0.3"), Real(20));
    Real z0 = solve_scalar(
        [&](const Real& z) {
            Real x = (sqrt(1 + 1 / z) - 1) / z;
            return phi(x, z);
        },
        c1);
    Real x0 = (sqrt(1 + 1 / z0) - 1) / z0;
    auto sol = solve_system2([&](const Real& x, const Real& z) { return std::array<Real, 2>{phi(x, z), phi_z(x, z)}; },
                             {x0, z0}, SolverConfig::standard());
    return sol;
}

SpSingular sp_singular_coeffs(const Real& y, const Real& w) {
    auto rc = sp_critical(y);
    SpSingular s;
    s.R = rc[0];
    s.E0 = rc[1];
    Real x = s.R, z = s.E0, a = 1 + x * z;
    Real ex = (1 + y) * exp(x * z * z / a);
    Real phi_x = ex * z * z / (a * a);
    Real hp = x * z * (2 + x * z) / (a * a), hpp = 2 * x / (a * a * a);
    Real phi_zz = ex * (hp * hp + hpp);
    s.E1 = -sqrt(2 * s.R * phi_x / phi_zz);
    Real c = s.R * s.E0 / (1 + s.R * s.E0);
    // D0 equation, continued from D0 = 0 at w = 0.
    Real D = y * w;
    for (int it = 0; it < 200; ++it) {
        Real f = log((1 + D) / (1 + y * w)) - c * D;
        Real fp = 1 / (1 + D) - c;
        if (abs(fp) < Real("1e-8")) throw BeyondSingularity("D0 solve: w beyond w0(y)");
        Real step = f / fp;
        D -= step;
        if (abs(step) < eps_digits(working_digits() - 5)) break;
    }
    s.D0 = D;
    Real RE = s.R * s.E0;
    s.D1 = -s.D0 * s.E1 * s.R * (s.D0 + 1) / ((RE * s.D0 - 1) * (1 + RE));
    s.B0 = -s.R * s.D0 * (RE * s.D0 - 2) / (2 * (1 + RE));
    s.B1 = s.E1 * s.R * s.R * s.D0 * s.D0 / (2 * (1 + RE) * (1 + RE));
    return s;
}

std::array<Real, 2> sp_printed_R_relations(const Real& y) {
    auto rc = sp_critical(y);
    Real E0 = rc[1];
    Real R_printed = (sqrt(1 - 1 / E0) - 1) / E0;
    Real lhs = E0 * E0 * E0 / (E0 - 1);
    Real t = log((1 + E0) / (1 + rc[0])) - E0;
    return {R_printed, lhs - t * t};
}

std::array<Real, 2> sp_tau_rho(const Real& y) {
    // B''(x) from a first-order jet of E through its defining equation.
    auto bsecond = [&](const Real& x0) {
        Real E0 = solve_E_sp(x0, y);
        RS x = RS::variable("e", 2) + x0;
        RS E = newton_series(
            [&](const BiSeries<Real>& Ev) {
                BiSeries<Real> xl = BiSeries<Real>::constant("eps", 1, x);
                return log((Ev + 1L) / (1 + y)) - xl * Ev * Ev / (xl * Ev + 1L);
            },
            RS::constant("e", 2, E0), eps_digits(working_digits() - 8));
        RS c = x * E / (x * E + 1L);
        RS bp = x * (E - c * E * (E / 2L + 1L));
        return bp[1];
    };
    auto rc = sp_critical(y);
    SolverConfig cfg = SolverConfig::standard();
    cfg.bracket = std::make_pair(rc[0] / 2, rc[0] * (1 - Real("1e-6")));
    Real tau = solve_scalar([&](const Real& u) { return 1 - u * bsecond(u); }, cfg);
    Real rho = tau * exp(-sp_bprime(tau, y));
    return {tau, rho};
}

SpConstants constants_sp(const SolverConfig&) {
    SpConstants sc;
    auto rc = sp_critical(Real(1));
    sc.R1 = rc[0];
    sc.E0 = rc[1];
    sc.E1 = sp_singular_coeffs(Real(1), Real(1)).E1;
    auto tr = sp_tau_rho(Real(1));
    sc.tau = tr[0];
    sc.rho = tr[1];
    if (!(sc.tau < sc.R1)) throw DomainError("series-parallel: tau >= R(1), composition not subcritical");
    sc.E_tau = solve_E_sp(sc.tau, Real(1));
    Real RE = sc.R1 * sc.E0;
    sc.w0 = (1 + 1 / RE) * exp(-1 / (1 + RE)) - 1;
    Real tE = sc.tau * sc.E_tau;
    sc.w1 = (1 + 1 / tE) * exp(-1 / (1 + tE)) - 1;
    sc.q_2conn = 1 / sc.w0;
    sc.q_conn = 1 / sc.w1;
    // d_2 / d_1 = 2 kappa; d_1 = rho, d_2 from the connected pgf.
    RS w = RS::variable("w", 2);
    Real c = tE / (1 + tE);
    RS D = d_wseries(c, Real(1), 2);
    Real Ex = sp_E_x(sc.tau, sc.E_tau);
    Real a = 1 + tE;
    RS Dx = D * (D + 1L) * ((sc.E_tau + sc.tau * Ex) / a) / (1L - D * tE);
    Real cx = (sc.E_tau + sc.tau * Ex) / (a * a);
    RS half = D / 2L + 1L;
    RS bx = D - D * c * half + (Dx - D * half * cx - Dx * (D + 1L) * c) * sc.tau;
    RS p = exp((D - D * c * half) * sc.tau) * bx * sc.rho;
    sc.kappa = p[2] / (2 * p[1]);
    return sc;
}

Real sp_w0_direct(const SpConstants& sc) {
    Real c = sc.R1 * sc.E0 / (1 + sc.R1 * sc.E0);
    auto sol = solve_system2(
        [&](const Real& w, const Real& z) {
            return std::array<Real, 2>{(1 + w) * exp(c * z) - z - 1, (1 + w) * c * exp(c * z) - 1};
        },
        {Real("1.3"), Real(6)}, SolverConfig::standard());
    return sol[0];
}

Real sp_w1_direct(const SpConstants& sc) {
    Real tE = sc.tau * sc.E_tau;
    Real c = tE / (1 + tE);
    auto sol = solve_system2(
        [&](const Real& w, const Real& z) {
            return std::array<Real, 2>{(1 + w) * exp(c * z) - z - 1, (1 + w) * c * exp(c * z) - 1};
        },
        {Real("1.3"), Real(6)}, SolverConfig::standard());
    return sol[0];
}

Real sp_q_conn_printed(const SpConstants& sc) {
    Real tE = sc.tau * sc.E_tau;
    return 1 / ((1 + 1 / tE) * exp(-1 / tE) - 1);
}

DegreeDistribution pgf_sp_2conn(int K) {
    if (K < 2) throw DomainError("pgf_sp_2conn: K >= 2 required");
    SpConstants sc = constants_sp(SolverConfig::standard());
    Real c = sc.R1 * sc.E0 / (1 + sc.R1 * sc.E0);
    RS D = d_wseries(c, Real(1), K);
    // B1(1,w) / B1(1,1) = D0(1,w)^2 / E0^2.
    RS p = D * D / (sc.E0 * sc.E0);
    DegreeDistribution dist;
    dist.family = Family::SeriesParallel;
    dist.level = Level::TwoConnected;
    dist.d = p.coeffs();
    int lo = std::max(2, K / 2);
    if (K >= 20) dist.tail = fit_tail(dist.d, lo, K, Real(-3) / 2, sc.q_2conn, std::min(6, (K - lo) / 3));
    return dist;
}

DegreeDistribution pgf_sp_conn(int K) {
    if (K < 1) throw DomainError("pgf_sp_conn: K >= 1 required");
    SpConstants sc = constants_sp(SolverConfig::standard());
    Real tE = sc.tau * sc.E_tau;
    Real c = tE / (1 + tE);
    RS D = d_wseries(c, Real(1), K);
    Real Ex = sp_E_x(sc.tau, sc.E_tau);
    Real a = 1 + tE;
    RS Dx = D * (D + 1L) * ((sc.E_tau + sc.tau * Ex) / a) / (1L - D * tE);
    Real cx = (sc.E_tau + sc.tau * Ex) / (a * a);
    RS half = D / 2L + 1L;
    RS b = (D - D * c * half) * sc.tau;
    RS bx = D - D * c * half + (Dx - D * half * cx - Dx * (D + 1L) * c) * sc.tau;
    RS p = exp(b) * bx * sc.rho;
    DegreeDistribution dist;
    dist.family = Family::SeriesParallel;
    dist.level = Level::Connected;
    dist.d = p.coeffs();
    int lo = std::max(2, K / 2);
    if (K >= 20) dist.tail = fit_tail(dist.d, lo, K, Real(-3) / 2, sc.q_conn, std::min(6, (K - lo) / 3));
    return dist;
}

std::array<QB, 2> sp_network_series(int N) {
    const int Nw = N + 2;
    QB closed = d_series(N, Nw);
    QS E = e_series(N);
    QS x = QS::variable("x", N);
    QS wvar = QS::variable("w", Nw);
    QB xE = lift_x(x * E, wvar);
    QB onep = QB::constant("x", N, wvar + 1L);
    QB D = QB::constant("x", N, wvar), S("x", N, wvar);
    for (int it = 0; it < N + 3; ++it) {
        S = (D - S) * xE;
        D = onep * exp(S) - 1L;
    }
    return {closed, D};
}

std::array<QB, 2> sp_broot_series(int N) {
    const int Nw = N + 2;
    QB closed = broot_closed(N, Nw);
    auto nets = sp_network_series(N);
    const QB& D = nets[1];
    QS wvar = QS::variable("w", Nw);
    // e^S = (1+D)/(1+w)
    QB es = (D + 1L) / QB::constant("x", N, wvar + 1L);
    QB integ("x", N, wvar);
    for (int n = 0; n <= N; ++n) integ[n] = integrate(es[n]).truncate(Nw);
    QB xb = shift_up(integ, 1);
    return {closed, xb};
}

std::vector<std::vector<BigInt>> sp_2conn_rooted_counts(int n_max) {
    return to_counts(broot_closed(n_max, n_max + 1), n_max);
}

std::vector<std::vector<BigInt>> sp_rooted_counts(int n_max) {
    const int N = n_max + 1, Nw = n_max + 1;
    QB b = broot_closed(N, Nw);
    // B'(x) = B•(x,1): sum over w.
    QS bp("x", N);
    for (int n = 0; n <= N; ++n) bp[n] = evaluate(b[n], Rational(1));
    QS x = QS::variable("x", N);
    QS F = fixed_point([&](const QS& f) { return x * exp(compose(bp, f)); }, QS("x", N));
    QB c = exp(compose(b, F.truncate(n_max)));
    return to_counts(c, n_max);
}

}  // namespace degdist
