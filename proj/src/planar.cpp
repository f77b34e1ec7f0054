#include "degdist/planar.hpp"

#include "degdist/errors.hpp"
#include "degdist/maps3.hpp"

#include <initializer_list>
#include <map>
#include <mutex>

namespace degdist {

namespace {

// c0 + c1 w + c2 w^2 + ...
template <class V>
V poly(const V& w, std::initializer_list<Real> c) {
    const Real* p = c.end();
    V acc = w * Real(0) + *(--p);
    while (p != c.begin()) acc = acc * w + *(--p);
    return acc;
}

// Integer polynomial in t, coefficients from the highest degree down.
Real pt(const Real& t, std::initializer_list<long> desc) {
    Real acc = 0;
    for (long a : desc) acc = acc * t + a;
    return acc;
}

Real sq(const Real& a) { return a * a; }
Real p32(const Real& a) { return a * sqrt(a); }
Real p52(const Real& a) { return a * a * sqrt(a); }

// Sample abscissae for the singular fits: X_i = i/N with a degree-10 fit.
// Closer nodes keep the high w-coefficients accurate but cost about 2.3
// digits per power of the fit, so N follows the working precision.
constexpr int kFitSamples = 14;
constexpr int kFitDegree = 10;
Real fit_node(int i) {
    int digits = working_digits();
    long n = digits >= 55 ? 3000 : digits >= 40 ? 1000 : 300;
    return Real(i + 1) / n;
}

}  // namespace

// ---- u, v -------------------------------------------------------------

Real u0_tilde(const Real& z) {
    if (z <= 0) throw DomainError("u0_tilde: z must be positive");
    return Real(-1) / 3 + sqrt(Real(4) / 9 + 1 / (3 * z));
}

Real r_of_z(const Real& z) {
    Real u = u0_tilde(z);
    Real a = 1 + z * sq(1 + u);
    return u / (z * a * a);
}

Real tau_of_x(const Real& x) {
    if (x <= 0) throw DomainError("tau_of_x: x must be positive");
    Real lx = log(x);
    Real s = solve_scalar([&](const Real& s) { return log(r_of_z(exp(s))) - lx; },
                          SolverConfig::in(Real(-60), Real(60)));
    return exp(s);
}

Real u0_of_x(const Real& x) {
    if (x <= 0) throw DomainError("u0_of_x: x must be positive");
    Real third = Real(1) / 3;
    Real hi = (1 + cbrt(16 * x)) / 3 + 1;
    return solve_scalar([&](const Real& u) { return (1 + u) * (3 * u - 1) * sq(3 * u - 1) / (16 * u) - x; },
                        SolverConfig::in(third, hi));
}

UVExpansion uv_expansion_x(const Real& x) {
    Real u = u0_of_x(x);
    Real a = 3 * u - 1, b = 1 + 3 * u, s = sqrt(2 * u * (u + 1));
    UVExpansion e;
    e.u = {u, -s, (1 + u) * (7 * u + 1) / (2 * b), -(1 + u) * (67 * u * u + 50 * u + 11) * u / (4 * b * b * s)};
    e.v = {(1 + u) / a, -2 * s / a, 2 * u * (3 + 5 * u) / (a * b),
           -sqrt(Real(2)) * u * (1 + u) * (79 * u * u + 42 * u + 7) / (4 * b * b * a * sqrt(u * (1 + u)))};
    return e;
}

UVExpansion uv_expansion_z(const Real& z) {
    Real u = u0_tilde(z);
    Real a = 3 * u - 1, b = 1 + 3 * u, s = sqrt(1 + u);
    Real b72 = b * b * b * sqrt(b);
    UVExpansion e;
    e.u = {u, -2 * u * s / sqrt(b), 2 * (1 + u) * u * (2 * u + 1) / (b * b),
           -2 * u * (10 * u * u * u + 11 * u * u + 5 * u + 1) * s / b72};
    e.v = {(1 + u) / a, -4 * u * s / (a * sqrt(b)), 4 * u * (5 * u * u + 4 * u + 1) / (a * b * b),
           -4 * u * (2 * u + 1) * (11 * u * u + 5 * u + 1) * s / (a * b72)};
    return e;
}

Real u1_implicit(const Real& x) {
    Real z = tau_of_x(x);
    Real u = u0_tilde(z);
    Real a = 1 + z * sq(1 + u);
    Real phi_z = -x * (a * a + 2 * z * a * sq(1 + u));
    Real phi_uu = -x * z * (2 * sq(2 * z * (1 + u)) + 4 * z * a);
    return -sqrt(2 * z * phi_z / phi_uu);
}

UVExpansion uv_fit_x(const Real& x) {
    Real tau = tau_of_x(x);
    std::vector<Real> Zs, us, vs;
    for (int i = 1; i <= 16; ++i) {
        Real Z = Real(i) / 200;
        auto rs = solve_RS(x * tau * (1 - Z * Z), tau * (1 - Z * Z));
        Zs.push_back(Z);
        us.push_back(rs[0]);
        vs.push_back(rs[1]);
    }
    auto cu = polyfit(Zs, us, 12), cv = polyfit(Zs, vs, 12);
    UVExpansion e;
    for (int j = 0; j < 4; ++j) {
        e.u[j] = cu[j];
        e.v[j] = cv[j];
    }
    return e;
}

// ---- T• and its singular expansion -----------------------------------

Real T_from_uv(const Real& x, const Real& z, const Real& w, const Real& u, const Real& v) {
    Real d = map_w2(u, v, w);
    if (d < 0) {
        // rounding at the branch point itself
        if (-d > eps_digits(working_digits() - 10) * (1 + map_w2(u, v, Real(0)))) throw NegativeDiscriminant("T•: w2 < 0");
        d = 0;
    }
    Real num = map_w1(u, v, w) - (u - w + 1) * sqrt(d);
    Real c = 1 + u + v;
    return x * x * z * z * w * w / 2 *
           (1 / (1 + w * z) + 1 / (1 + x * z) - 1 - sq(u + 1) * num / (2 * w * (v * w + u * u + 2 * u + 1) * c * c * c));
}

namespace {

template <class V>
TSing<V> T_sing_impl(const Real& u, const V& w, bool printed_sign) {
    Real u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u, u6 = u5 * u, u7 = u6 * u, u8 = u7 * u, u9 = u8 * u;
    Real a = 3 * u - 1, a2 = a * a, a3 = a2 * a, a6 = a3 * a3;
    Real u1 = u + 1;
    V P = (u1 - w) * poly(w, {81 * u3 + 99 * u2 + 19 * u + 1, -a2});
    if constexpr (std::is_same_v<V, Real>) {
        if (P < 0) throw NegativeDiscriminant("T_i: P < 0");
    } else {
        if (P[0] < 0) throw NegativeDiscriminant("T_i: P < 0");
    }
    V sP = sqrt(P);
    V P0 = poly(w, {81 * u4 + 180 * u3 + 118 * u2 + 20 * u + 1, -126 * u3 - 150 * u2 - 26 * u - 2, 27 * u2 + 6 * u + 1});
    V P20 = poly(w, {13122 * u9 + 47385 * u8 + 61560 * u7 + 30708 * u6 - 228 * u5 - 4530 * u4 - 872 * u3 + 36 * u2 + 18 * u + 1,
                     -3645 * u8 - 30942 * u7 - 46494 * u6 - 13230 * u5 + 7536 * u4 + 1590 * u3 - 18 * u2 - 42 * u - 3,
                     6561 * u7 + 20898 * u6 + 8532 * u5 - 7281 * u4 - 1635 * u3 - 132 * u2 + 30 * u + 3,
                     1458 * u5 + 3807 * u4 + 900 * u3 + 114 * u2 - 6 * u - 1});
    V P21 = poly(w, {1458 * u9 + 6561 * u8 + 11376 * u7 + 8988 * u6 + 2388 * u5 - 794 * u4 - 512 * u3 - 36 * u2 + 10 * u + 1,
                     -1215 * u8 - 6561 * u7 - 11439 * u6 - 7005 * u5 + 231 * u4 + 1229 * u3 + 75 * u2 - 15 * u - 4,
                     1944 * u7 + 6507 * u6 + 5553 * u5 - 576 * u4 - 1530 * u3 + 15 * u2 - 15 * u + 6,
                     -243 * u6 + 27 * u5 + 1278 * u4 + 858 * u3 - 111 * u2 + 35 * u - 4,
                     -54 * u4 - 45 * u3 + 57 * u2 - 15 * u + 1});
    V P3 = poly(w, {-81 * u5 - 261 * u4 - 298 * u3 - 138 * u2 - 21 * u - 1,
                    81 * u5 + 243 * u4 + 270 * u3 + 138 * u2 + 33 * u + 3,
                    162 * u4 + 135 * u3 - 27 * u2 - 3 * u - 3, -a3});
    V den = w + (3 * u2 + 2 * u - 1);
    Real b9 = 9 * u + 1;
    TSing<V> r;
    r.T0 = ((-a6) / (27648 * u1 * u4)) * w / den * (P0 / b9 - (u1 - w) * sP);
    r.T2 = (a6 / (82944 * u1 * u1 * u5)) * w / (den * den) * (P20 / (b9 * b9) - P21 / sP);
    Real pref = -a6 * sqrt(2 * u * u1) * (3 * u + 1) / (373248 * u1 * u1 * u1 * u6);
    V frac = P3 / ((u1 - w) * sP);
    V br = poly(w, {-9 * u2 - 10 * u - 1, a2});
    br = printed_sign ? br + frac : br - frac;
    r.T3 = pref * w * br;
    return r;
}

}  // namespace

TSing<Real> T_singular_coeffs(const Real& u, const Real& w, bool printed_sign) {
    return T_sing_impl<Real>(u, w, printed_sign);
}

TSing<RSeries> T_singular_series(const Real& u, int K, bool printed_sign) {
    return T_sing_impl<RSeries>(u, RSeries::variable("w", K), printed_sign);
}

std::array<Real, 4> T_fit(const Real& x, const Real& w) {
    Real tau = tau_of_x(x);
    std::vector<Real> Zs, ts;
    for (int i = 1; i <= 16; ++i) {
        Real Z = Real(i) / 200;
        Real z = tau * (1 - Z * Z);
        auto uv = solve_RS(x * z, z);
        Zs.push_back(Z);
        ts.push_back(T_from_uv(x, z, w, uv[0], uv[1]));
    }
    auto c = polyfit(Zs, ts, 12);
    return {c[0], c[1], c[2], c[3]};
}

// ---- t parametrisation, D_i -----------------------------------------

Real y_of_t(const Real& t) {
    Real e = -t * t * (1 - t) * (18 + 36 * t + 5 * t * t) / (2 * (3 + t) * (1 + 2 * t) * sq(1 + 3 * t));
    return (1 + 2 * t) / ((1 + 3 * t) * (1 - t)) * exp(e) - 1;
}

Real t_of_y(const Real& y) {
    if (y <= 0) throw DomainError("t_of_y: y must be positive");
    return solve_scalar([&](const Real& t) { return y_of_t(t) - y; },
                        SolverConfig::in(Real(0), 1 - eps_digits(working_digits() / 2)));
}

namespace {

template <class V>
V D0_arg(const V& D, const Real& t) {
    Real t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    V L = D * (t - 1) + t;
    V S = L * (D * ((t - 1) * sq(t - 1)) + t * sq(t + 3));
    V num = poly(D, {t4 + 6 * t3 + 9 * t2, 2 * t4 + 6 * t3 - 6 * t2 + 10 * t - 12, t4 - 12 * t2 + 20 * t - 9});
    return sqrt(S) * L / ((D + 1L) * (4 * (3 * t + 1))) - num / ((D + 1L) * (4 * (t + 3) * (3 * t + 1)));
}

Real S_of(const Real& D, const Real& t) { return (D * t - D + t) * (D * (t - 1) * sq(t - 1) + t * sq(t + 3)); }

Real beta_of(const Real& t) { return 3 * t * (1 + t) * pt(t, {17, 237, 1155, 2527, 1808, 400}); }

template <class V>
V D2_impl(const V& D0, const Real& t) {
    Real tm = t - 1, tp = t + 3;
    V L = D0 * tm + t;
    V sS = sqrt(L * (D0 * (tm * tm * tm) + t * tp * tp));
    Real A1 = pt(t, {11, 102, 411, 588, 352, 72});
    Real A2 = pt(t, {22, 231, 1059, 2277, 2995, 3272, 2000, 432});
    Real A3 = pt(t, {11, 85, 252, 108, -48, -24});
    Real A4 = pt(t, {11, 124, 582, 968, -977, -4828, -4112, -984});
    V S21 = poly(D0, {-t * t * tp * tp * tp * A3, -t * tm * tp * A2, -sq(sq(tm)) * tp * A1});
    V S22 = poly(D0, {t * tp * tp * A3, tm * A4});
    V S23 = L * poly(D0, {t * pt(t, {1, 0, -3, -14}), 2 * tm * pt(t, {1, -1, 5, -1}), sq(sq(tm))}) * (-tp);
    V S24 = poly(D0, {t * pt(t, {1, 0, -3, 50}), pt(t, {2, 0, -12, 80, -6}), pt(t, {1, 2, -9}) * tm * tm});
    Real b0 = pt(t, {17, 237, 1155, 2527, 1808, 400});
    return (D0 + 1L) * (D0 + 1L) * (4 * tm) * (S21 + S22 * sS) / ((S23 + S24 * sS) * b0);
}

template <class V>
V D3_impl(const V& D0, const Real& t) {
    Real tm = t - 1, tp = t + 3;
    V L = D0 * tm + t;
    V sS = sqrt(L * (D0 * (tm * tm * tm) + t * tp * tp));
    Real b = beta_of(t);
    Real S31 = pt(t, {-5, 6, 135, 664, 592, 144});
    V S32 = poly(D0, {pt(t, {81, 1043, 5626, 16806, 30165, 30663, 13344, 1008, -432, 0, 0, 0}),
                      pt(t, {243, 2221, 8135, 15609, 12953, -3929, -12627, -13293, -7680, -1632, 0, 0}),
                      pt(t, {243, 1313, 1681, -51, -5269, -7325, 2571, 10271, 1846, -3888, -1392, 0}),
                      pt(t, {81, 135, -828, -180, 1982, 1090, -5196, 2108, 2425, -1617, -256, 256})});
    V S33 = poly(D0, {pt(t, {81, 800, 3226, 7128, 8781, 4320, 384, -144, 0}),
                      pt(t, {81, 378, 63, -1044, 1087, -646, -687, 512, 256})});
    V S34 = poly(D0, {pt(t, {1, 0, -3, 50, 0}), pt(t, {2, 0, -12, 80, -6}), pt(t, {1, 0, -12, 20, -9})});
    V S35 = poly(D0, {pt(t, {1, 0, -3, -14, 0}), pt(t, {2, -4, 12, -12, 2}), pt(t, {1, -4, 6, -4, 1})});
    Real pref = 24 * tp * tm * t * t * sq(t + 1) * p32(S31) / p52(b);
    return (D0 + 1L) * (D0 + 1L) * pref * (S32 - S33 * L * sS) / (L * (S34 * sS - L * S35 * tp));
}

struct DCacheKey {
    int digits;
    std::string y, w;
    bool operator<(const DCacheKey& o) const { return std::tie(digits, y, w) < std::tie(o.digits, o.y, o.w); }
};

}  // namespace

DSing D_singular_coeffs(const Real& y, const Real& w) {
    Real t = t_of_y(y);
    // continuation in w from D0(y,0) = 0
    Real D = 0;
    const int steps = 8;
    for (int i = 1; i <= steps; ++i) {
        Real wi = w * i / steps;
        Real li = log(1 + y * wi);
        D = solve_scalar(
            [&](const Real& d) {
                if (S_of(d, t) < 0) throw BranchLost("D0: radicand S changed sign");
                return log(1 + d) - li - D0_arg(d, t);
            },
            SolverConfig::standard(), D + (i == 1 ? y * w / steps : Real(0)));
    }
    DSing r;
    r.D0 = D;
    r.D2 = D2_impl<Real>(D, t);
    r.D3 = D3_impl<Real>(D, t);
    return r;
}

DSing E_coeffs(const Real& y) { return D_singular_coeffs(y, Real(1)); }

RSeries D0_wseries(const Real& y, int K) {
    Real t = t_of_y(y);
    RSeries w = RSeries::variable("w", K);
    BiSeries<Real> lw = BiSeries<Real>::constant("eps", 1, log(w * y + 1L));
    return newton_series([&](const BiSeries<Real>& D) { return log(D + 1L) - lw - D0_arg(D, t); }, w * y,
                         eps_digits(working_digits() - 8));
}

Real w3_of_y(const Real& y) {
    Real t = t_of_y(y);
    Real D = t / (1 - t);
    return ((1 + D) * exp(-D0_arg(D, t)) - 1) / y;
}

Real q2_printed(const Real& t0) {
    return 1 / (exp((t0 - 1) * (t0 + 6) / (6 * t0 * t0 + 20 * t0 + 6)) / (1 - t0) - 1);
}

// ---- printed I_{i,j} and B_i -----------------------------------------

IPrinted I_coeffs_printed(const Real& y, const Real& w, const Real& alpha) {
    Real t = t_of_y(y);
    DSing ds = D_singular_coeffs(y, w);
    const Real &D0 = ds.D0, &D2 = ds.D2, &D3 = ds.D3;
    Real tm = t - 1, tp = t + 3;
    Real L = D0 * tm + t;
    Real sS = sqrt(S_of(D0, t));
    Real b = beta_of(t);
    Real b0 = pt(t, {17, 237, 1155, 2527, 1808, 400});
    Real A = D0 * pt(t, {5, -3, -1, -1}) + pt(t, {5, 6, 5, 0}) + (3 * t + 1) * sS;
    Real B = D0 * pt(t, {1, -3, 3, -1}) + pt(t, {1, 2, 5, 0}) + tm * sS;
    if (A <= 0 || B <= 0) throw LogDomain("I_{i,j}: log argument A or B not positive");
    Real R00 = 3 * D0 * D0 * tm * tm - D0 * (7 * t - 3) - t * tp;
    Real R01 = 3 * D0 * D0 * D0 * sq(sq(tm)) - D0 * D0 * tm * pt(t, {3, -1, 25, -3}) + D0 * t * pt(t, {1, 8, 21, -14}) +
               tp * tp * t * t;
    Real R02 = 128 * t * (3 * t + 1) * tm * sq(1 + 2 * t) * tp * tp * sq(t + 1);
    Real R03 = D0 * D0 * sq(sq(tm)) + 2 * D0 * tm * pt(t, {1, 1, 3, -1}) + pt(t, {1, 4, 7, 2, 2});
    Real P8a = pt(t, {51, 1081, 8422, 31914, 59639, 42461, 7584, -2832, -864});
    Real P10a = pt(t, {153, 3204, 29055, 146710, 432951, 717528, 561457, 208750, 47040, 13248, 2592});
    Real P10b = pt(t, {408, 6177, 34003, 92097, 122523, 126075, 145777, 82707, -1543, -15088, -3312});
    Real P10c = pt(t, {249, 3333, 22417, 105245, 339675, 664087, 513315, 127943, -6936, -1152, 1296});
    Real P12a = pt(t, {357, 7089, 58637, 273500, 828314, 1886278, 3638786, 5441836, 4731121, 1945329, 179665, -96240,
                       -20304});
    Real P12b =
        pt(t, {51, 849, 6580, 33465, 115887, 253743, 285517, 148083, 130634, 141380, 59715, 4944, -1200});
    Real Q4 = pt(t, {2, 3, -2, 3, 2});
    Real tm3 = tm * tm * tm, tm4 = tm3 * tm, tm5 = tm4 * tm, tm7 = tm5 * tm * tm;
    // The last term of R_{0,4} has no operator in print; read as a sum.
    Real R04 = 3 * D0 * D0 * D0 * tm5 * P8a - D0 * D0 * tm3 * P10a - D0 * tp * tp * t * P10b +
               3 * t * tm * tp * tp * Q4 * b0;
    Real R05 = 3 * sq(D0 * D0) * tm7 * P8a + 2 * D0 * D0 * D0 * tm4 * P10c - D0 * D0 * t * tm * tm * P12a -
               2 * D0 * t * tp * tp * P12b + 3 * t * t * tm * tp * tp * tp * Q4 * b0;
    Real R06 = D0 * tm * tm + t * t + t + 2;
    Real S31 = pt(t, {-5, 6, 135, 664, 592, 144});
    Real R20 = 3 * (3 * t + 1) * (t + 1) * S31;
    Real R21 = D0 * D0 * pt(t, {3, -12, 7, 2}) + D0 * pt(t, {6, -3, 1, 0}) + pt(t, {3, 9, 0, 0});
    Real R22 = D0 * D0 * D0 * pt(t, {3, 0, -47, -18, 21, 164, -105, -18}) +
               D0 * D0 * pt(t, {9, 36, -19, -168, -165, 292, 15, 0}) +
               D0 * pt(t, {9, 72, 190, 156, -63, -108, 0, 0}) + pt(t, {3, 36, 162, 324, 243, 0, 0, 0});
    Real R30 = D0 * D0 * pt(t, {1, -2, 0, 2, -1}) + D0 * pt(t, {2, 4, -2, -4, 0}) + pt(t, {1, 6, 9, 0, 0});
    Real R31 = D0 * D0 * pt(t, {1, -3, 2, 2, -3, 1}) + D0 * pt(t, {2, 6, -2, -6, 0, 0}) + pt(t, {1, 9, 27, 27, 0, 0});
    Real t6 = pow(t, 6), t5 = pow(t, 5), t8 = pow(t, 8);
    Real l2 = log(Real(2)), lt = log(t), lt1 = log(t + 1), c361 = pt(t, {3, 0, 6, 0, -1});
    Real a32 = p32(alpha);

    IPrinted I;
    I.I00 = (3 * t + 1) * tm3 / (2048 * t6) *
            (4 * (3 * t - 1) * pow(t + 1, 3) * lt + 8 * (3 * t - 1) * pow(t + 1, 3) * lt1 + 8 * c361 * l2 -
             2 * tm3 * (3 * t + 1) * log(A) - 2 * c361 * log(B) +
             tm * (D0 * pt(t, {1, -3, 3, -1}) + pt(t, {1, 4, 1, 2})) * sS -
             tm / tp *
                 (D0 * D0 * pt(t, {1, -2, 1, -4, 11, -10, 3}) + D0 * pt(t, {2, 8, -10, -32, 46, -8, -6}) +
                  pt(t, {1, 10, 34, 44, 21, 18, 0})));
    I.I02 = -(3 * t + 1) * tm3 / (512 * t6) *
            (4 * pt(t, {3, -4, 6, 0, -1}) * l2 + 2 * c361 * lt + 4 * c361 * lt1 +
             pt(t, {-3, 8, -6, 0, 1}) * log(3 * A) + pt(t, {-3, -8, -6, 0, 1}) * log(B) +
             (D2 * tm5 * (R00 * sS + R01) - tm * tm / (b * tp) * (R04 * sS + R05)) / (tp * (R06 * sS + R03)));
    I.I03 = -(3 * t + 1) * t * t * tm4 * tm4 * (R00 * sS + R01) * (D3 * p52(b) + D0 * a32 * R02) /
            (512 * tp * t8 * p52(b) * (R06 * sS + R03));
    I.I22 = pow(tm, 6) * R20 * (R21 * sS + R22) / (3072 * b * t6 * (t + 1) * (D0 + 1));
    I.I23 = sq(t + 1) * sq(1 + 2 * t) * a32 * (3 * t + 1) * tm7 * (tp * tp * R21 * sS - R22) /
            (16 * t5 * p52(b) * (1 + D0));
    I.I33 = sqrt(Real(3)) * pow(tm, 6) * p32(R20) * (R30 * sS - R31 * L) /
            (2304 * sqrt(3 * t + 1) * t5 * p32(b) * p32(t + 1) * L);
    return I;
}

BSing B_singular_printed(const Real& y, const Real& w, const Real& alpha) {
    Real t = t_of_y(y);
    DSing ds = D_singular_coeffs(y, w);
    DSing es = E_coeffs(y);
    PlanarCritical pc = planar_critical(y);
    const Real &R = pc.R, &E0 = pc.E0;
    const Real &D0 = ds.D0, &D2 = ds.D2, &D3 = ds.D3;
    Real tm = t - 1;
    Real sS = sqrt(S_of(D0, t));
    Real A = D0 * pt(t, {5, -3, -1, -1}) + pt(t, {5, 6, 5, 0}) + (3 * t + 1) * sS;
    Real B = D0 * pt(t, {1, -3, 3, -1}) + pt(t, {1, 2, 5, 0}) + tm * sS;
    if (A <= 0 || B <= 0) throw LogDomain("B_0: log argument A or B not positive");
    IPrinted I = I_coeffs_printed(y, w, alpha);
    BSing b;
    b.B0 = 1 / (128 * t * t * t) *
           (-8 * log(Real(2)) * pt(t, {3, 0, 6, 0, -1}) - 8 * log(t + 1) * (3 * t - 1) * pow(t + 1, 3) -
            4 * log(t) * (3 * t - 1) * pow(t + 1, 3) + 2 * log(A) * tm * tm * tm * (3 * t + 1) +
            2 * log(B) * pt(t, {3, 24, 6, 0, -1}) + sS * tm * (D0 * pt(t, {1, -3, 3, -1}) + pt(t, {1, -8, 1, -2})) -
            D0 / (t + 3) *
                (D0 * pow(tm, 5) * pt(t, {1, 2, -9}) + 2 * tm * tm * tm * pt(t, {1, 0, 0, 60, 3}) +
                 sq(t + 3) * tm * pt(t, {1, -8, 1, -2}) * t));
    Real RE = R * E0;
    b.B2 = R * D0 * (D0 * (RE * RE + R * es.D2) - 2 * (1 + RE)) / (2 * sq(1 + RE)) + (I.I00 + I.I02 + I.I22) / R +
           (log(1 + D0) - log(1 + y * w) - R * RE * D0 / (1 + RE)) * (1 + D0 - D2) * R;
    b.B3 = R * R * D0 * (2 * D3 * E0 * E0 * R + 2 * D3 * E0 + es.D3 * D0) / (2 * sq(E0 * R + 1)) +
           R * D3 * (log(1 + y * w) - log(D0 + 1)) + (I.I03 + I.I23 + I.I33) / R;
    return b;
}

// ---- critical composition and direct functions -----------------------

namespace {

struct UV {
    Real u, v;
};

UV uv_at(const Real& x, const Real& z) {
    auto rs = solve_RS(x * z, z);
    return {rs[0], rs[1]};
}

// u, v exactly at the branch point z = tau(x), i.e. x = r(z).
UV uv_branch(const Real& z) {
    Real u = u0_tilde(z);
    return {u, z * sq(1 + u)};
}

Real E0_equation(const Real& E0, const Real& y) {
    Real R = r_of_z(E0);
    UV b = uv_branch(E0);
    return log(1 + y) + R * E0 * E0 / (1 + R * E0) + T_from_uv(R, E0, Real(1), b.u, b.v) / (R * R * E0) -
           log(1 + E0);
}

std::mutex g_crit_mu;
std::map<std::pair<int, std::string>, PlanarCritical> g_crit;

std::string key_of(const Real& y) { return y.str(0, std::ios_base::scientific); }

}  // namespace

PlanarCritical planar_critical(const Real& y) {
    if (y <= 0) throw DomainError("planar_critical: y must be positive");
    auto key = std::make_pair(working_digits(), key_of(y));
    {
        std::lock_guard<std::mutex> lock(g_crit_mu);
        auto it = g_crit.find(key);
        if (it != g_crit.end()) return it->second;
    }
    // Scan for the first sign change of the E0 equation in log E; points
    // where the branch-point formula is not defined are skipped.
    auto f = [&](const Real& e, Real& out) {
        try {
            out = E0_equation(e, y);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    Real lo, hi, flo, fhi;
    bool have = false, found = false;
    for (Real e = Real("0.01"); e < 1000; e *= Real("1.1")) {
        Real fe;
        if (!f(e, fe)) {
            have = false;
            continue;
        }
        if (have && (flo < 0) != (fe < 0)) {
            hi = e;
            fhi = fe;
            found = true;
            break;
        }
        lo = e;
        flo = fe;
        have = true;
    }
    if (!found) throw NoSignChange("planar_critical: no root of the E0 equation");
    PlanarCritical pc;
    pc.E0 = solve_scalar([&](const Real& e) { return E0_equation(e, y); }, SolverConfig::in(lo, hi));
    pc.R = r_of_z(pc.E0);
    std::lock_guard<std::mutex> lock(g_crit_mu);
    g_crit.emplace(key, pc);
    return pc;
}

// At x = R(y) the network D(x,y,w) runs into the branch point of T•(x,E0,s)
// in s (discriminant w2 = 0) when D = E0 s; invert the D equation there.
Real w3_direct(const Real& y) {
    PlanarCritical pc = planar_critical(y);
    UV b = uv_branch(pc.E0);
    Real f0 = map_w2<Real>(b.u, b.v, Real(0)), f1 = map_w2<Real>(b.u, b.v, Real(1)),
         fm = map_w2<Real>(b.u, b.v, Real(-1));
    Real A = (f1 + fm) / 2 - f0, B = (f1 - fm) / 2;
    Real disc = B * B - 4 * A * f0;
    if (disc < 0) throw NegativeDiscriminant("w3_direct: no real branch point");
    Real r1 = (-B - sqrt(disc)) / (2 * A), r2 = (-B + sqrt(disc)) / (2 * A);
    Real s0 = (r1 > 0 && (r1 < r2 || r2 <= 0)) ? r1 : r2;
    if (s0 <= 0) throw DomainError("w3_direct: no positive branch point");
    Real D = pc.E0 * s0;
    Real c = pc.R * pc.E0 / (1 + pc.R * pc.E0);
    Real rhs = log(1 + D) - c * D - T_from_uv(pc.R, pc.E0, s0, b.u, b.v) / (pc.R * pc.R * D);
    return (exp(rhs) - 1) / y;
}

Real R_of_y(const Real& y) { return planar_critical(y).R; }

namespace {

// F(E) for E(x,y) at fixed x; upper end evaluated at the branch point.
Real E_equation(const Real& E, const Real& x, const Real& y, const Real& tau) {
    UV p = (E >= tau) ? uv_branch(tau) : uv_at(x, E);
    return log(1 + E) - log(1 + y) - x * E * E / (1 + x * E) - T_from_uv(x, E, Real(1), p.u, p.v) / (x * x * E);
}

}  // namespace

Real solve_E_planar(const Real& x, const Real& y) {
    if (x <= 0) throw DomainError("solve_E_planar: x must be positive");
    if (x >= R_of_y(y)) throw BeyondSingularity("solve_E_planar: x >= R(y)");
    Real tau = tau_of_x(x);
    return solve_scalar([&](const Real& E) { return E_equation(E, x, y, tau); },
                        SolverConfig::in(eps_digits(working_digits() / 2), tau));
}

Real solve_D_planar(const Real& x, const Real& y, const Real& w) {
    if (w == 0) return Real(0);
    Real E = solve_E_planar(x, y);
    UV p = uv_at(x, E);
    Real c = x * E / (1 + x * E);
    Real lw = log(1 + y * w);
    Real hi = E * (w > 1 ? w : Real(1)) * (1 + eps_digits(6));
    return solve_scalar(
        [&](const Real& D) {
            return log(1 + D) - lw - c * D - T_from_uv(x, E, D / E, p.u, p.v) / (x * x * D);
        },
        SolverConfig::in(eps_digits(working_digits() / 2), hi));
}

Real integral_T_numeric(const Real& x, const Real& z, const Real& w) {
    if (w == 0) return Real(0);
    UV p = uv_at(x, z);
    return integrate([&](const Real& s) { return T_from_uv(x, z, s, p.u, p.v) / s; }, Real(0), w,
                     working_digits() - 10);
}

Real integral_T(const Real& x, const Real& z, const Real& w) {
    UV p = uv_at(x, z);
    const Real &u = p.u, &v = p.v;
    Real Q = u * u * v * v * w * w -
             2 * u * v * w * (u * u * (2 * v + 1) + u * (3 * v * v + 6 * v + 2) + 2 * v * v * v + 5 * v * v + 4 * v + 1) +
             sq(1 + u) * sq(u + sq(v + 1));
    if (Q < 0) throw DomainError("integral_T: Q < 0");
    Real sQ = sqrt(Q);
    Real g = u * u + u * (v + 2) + sq(v + 1);
    Real Q1 = (-u * v * w * (u * u + u * (v + 2) + 2 * v * v + 3 * v + 1) + (u + 1) * (u + v + 1) * sQ +
               sq(u + 1) * (2 * u * u * (v + 1) + u * (v * v + 3 * v + 2) + v * v * v + 3 * v * v + 3 * v + 1)) /
              (2 * sq(w * v + sq(u + 1)) * (v + 1) * g);
    Real Q2 = (-w * u * v + u * u * (2 * v - 1) + u * (3 * v * v + 6 * v + 2) + 2 * v * v * v + 5 * v * v + 4 * v + 1 - sQ) /
              (2 * v * g);
    if (Q1 <= 0 || Q2 <= 0) throw DomainError("integral_T: Q1 or Q2 not positive");
    Real c = 1 + u + v, c3 = c * c * c;
    Real vv = 4 * v * v * sq(v + 1);
    Real first = -x * x * (z * z * z * x * w * w - 2 * w * z - 2 * x * z * z * w + (2 + 2 * x * z) * log(1 + w * z)) /
                 (4 * (1 + x * z));
    Real br = w *
                  (2 * u * u * u + (6 * v + 6) * u * u + (6 * v * v - v * w + 14 * v + 6) * u + 4 * v * v * v +
                   10 * v * v + 8 * v + 2) /
                  (4 * v * sq(v + 1)) +
              (1 + u) * (1 + u + 2 * v + v * v) *
                  (2 * u * u * u + (4 * v + 5) * u * u + (3 * v * v + 8 * v + 4) * u + 2 * v * v * v + 5 * v * v + 4 * v + 1) /
                  (u * vv) -
              sQ * (2 * u * u * u + (4 * v + 5) * u * u + (3 * v * v - v * w + 8 * v + 4) * u + 5 * v * v + 2 * v * v * v + 4 * v + 1) /
                  (u * vv) +
              sq(1 + u) * c3 * log(Q1) / (2 * v * v * sq(1 + v)) +
              (u * u * u + 2 * u * u + u - 2 * v * v * v - 4 * v * v - 2 * v) * c3 * log(Q2) / (2 * v * v * sq(1 + v) * u);
    return first - u * v * x / (2 * c3) * br;
}

Real broot_planar(const Real& x, const Real& y, const Real& w) {
    if (w == 0) return Real(0);
    Real E = solve_E_planar(x, y);
    Real D = solve_D_planar(x, y, w);
    UV p = uv_at(x, E);
    Real c = x * E / (1 + x * E);
    Real T = T_from_uv(x, E, D / E, p.u, p.v);
    return x * (D - c * D * (1 + D / 2)) - (1 + D) * T / (x * D) + integral_T_numeric(x, E, D / E) / x;
}

// ---- structural singular expansion of B• -----------------------------

namespace {

// h(s) = T•(x,z,s)/s as a series in s.
RSeries h_series(const Real& x, const Real& z, const UV& p, int K) {
    const Real &u = p.u, &v = p.v;
    RSeries s = RSeries::variable("w", K + 1);
    RSeries num = map_w1<RSeries>(s * Real(0) + u, s * Real(0) + v, s) -
                  (u + 1 - s) * sqrt(map_w2<RSeries>(s * Real(0) + u, s * Real(0) + v, s));
    Real scale = 1 + abs(num[1]);
    RSeries n1 = shift_down(num, 1, eps_digits(working_digits() - 10) * scale);
    RSeries sK = RSeries::variable("w", K);
    Real c = 1 + u + v;
    RSeries inner = 1L / (sK * z + 1L) + (1 / (1 + x * z) - 1) -
                    n1 * (sq(u + 1) / (2 * c * c * c)) / (sK * v + (u * u + 2 * u + 1));
    return sK * inner * (x * x * z * z / 2);
}

RSeries compose_num(const RSeries& outer, const RSeries& inner) { return compose(outer, inner); }

struct SampleB {
    RSeries B;  // B•(x,y,w) in w
    Real B1;    // B•(x,y,1)
    Real E;
};

SampleB sample_B(const Real& x, const Real& y, int K) {
    Real E = solve_E_planar(x, y);
    UV p = uv_at(x, E);
    Real c = x * E / (1 + x * E);
    RSeries h = h_series(x, E, p, K);
    RSeries hp = derivative(h);
    RSeries H = integrate(h);
    RSeries w = RSeries::variable("w", K);
    RSeries lw = log(w * y + 1L);
    // Newton in series for log(1+D) - log(1+yw) - cD - h(D/E)/(x^2 E) = 0.
    Real d1 = y / (1 - c - hp[0] / (x * x * E * E));
    RSeries D = w * d1;
    Real tol = eps_digits(working_digits() - 8);
    for (int it = 0; it < 60; ++it) {
        RSeries s = D / E;
        RSeries G = log(D + 1L) - lw - D * c - compose_num(h, s) / (x * x * E);
        RSeries Gp = 1L / (D + 1L) - c - compose_num(hp, s) / (x * x * E * E);
        RSeries step = G / Gp;
        D = D - step;
        if (CoefTraits<RSeries>::max_abs(step) <= tol * (1 + CoefTraits<RSeries>::max_abs(D))) break;
        if (it == 59) throw NoConvergence("B•: network series did not converge");
    }
    RSeries s = D / E;
    SampleB out;
    out.B = (D - D * c * (D / 2L + 1L)) * x - (D + 1L) * compose_num(h, s) / (x * E) + compose_num(H, s) / x;
    Real T1 = T_from_uv(x, E, Real(1), p.u, p.v);
    out.B1 = x * (E - c * E * (1 + E / 2)) - (1 + E) * T1 / (x * E) + integral_T_numeric(x, E, Real(1)) / x;
    out.E = E;
    return out;
}

std::mutex g_bexp_mu;
std::map<std::tuple<int, std::string, int>, BExpansion> g_bexp;

}  // namespace

BExpansion B_expansion(const Real& y, int K) {
    auto key = std::make_tuple(working_digits(), key_of(y), K);
    {
        std::lock_guard<std::mutex> lock(g_bexp_mu);
        auto it = g_bexp.find(key);
        if (it != g_bexp.end()) return it->second;
    }
    PlanarCritical pc = planar_critical(y);
    std::vector<Real> Xs;
    std::vector<SampleB> samples;
    for (int i = 0; i < kFitSamples; ++i) {
        Real X = fit_node(i);
        Xs.push_back(X);
        samples.push_back(sample_B(pc.R * (1 - X * X), y, K));
    }
    BExpansion be;
    be.y = y;
    be.R = pc.R;
    be.E0 = pc.E0;
    for (int j = 0; j < 4; ++j) be.B[j] = RSeries("w", K);
    for (int k = 0; k <= K; ++k) {
        std::vector<Real> vals;
        for (auto& s : samples) vals.push_back(s.B[k]);
        auto c = polyfit(Xs, vals, kFitDegree);
        for (int j = 0; j < 4; ++j) be.B[j][k] = c[j];
    }
    std::vector<Real> b1, e1;
    for (auto& s : samples) {
        b1.push_back(s.B1);
        e1.push_back(s.E);
    }
    auto cb = polyfit(Xs, b1, kFitDegree), ce = polyfit(Xs, e1, kFitDegree);
    for (int j = 0; j < 4; ++j) {
        be.B_at1[j] = cb[j];
        be.D_at1[j] = ce[j];
    }
    std::lock_guard<std::mutex> lock(g_bexp_mu);
    g_bexp.emplace(key, be);
    return be;
}

std::array<Real, 4> D_fit(const Real& y, const Real& w) {
    Real R = R_of_y(y);
    std::vector<Real> Xs, vals;
    for (int i = 0; i < kFitSamples; ++i) {
        Real X = fit_node(i);
        Xs.push_back(X);
        vals.push_back(solve_D_planar(R * (1 - X * X), y, w));
    }
    auto c = polyfit(Xs, vals, kFitDegree);
    return {c[0], c[1], c[2], c[3]};
}

namespace {

// B0(y,1) alone, via the scalar samples.
Real B0_at1(const Real& y) {
    PlanarCritical pc = planar_critical(y);
    std::vector<Real> Xs, vals;
    for (int i = 0; i < kFitSamples; ++i) {
        Real X = fit_node(i);
        Real x = pc.R * (1 - X * X);
        Real E = solve_E_planar(x, y);
        UV p = uv_at(x, E);
        Real c = x * E / (1 + x * E);
        Real T1 = T_from_uv(x, E, Real(1), p.u, p.v);
        Xs.push_back(X);
        vals.push_back(x * (E - c * E * (1 + E / 2)) - (1 + E) * T1 / (x * E) + integral_T_numeric(x, E, Real(1)) / x);
    }
    return polyfit(Xs, vals, kFitDegree)[0];
}

}  // namespace

Real rho_of_y(const Real& y) { return R_of_y(y) * exp(-B0_at1(y)); }

Real fit_alpha(const Real& y) {
    BExpansion be = B_expansion(y, 4);
    Real target = be.B_at1[3];
    Real a = B_singular_printed(y, Real(1), Real(0)).B3;
    Real b = B_singular_printed(y, Real(1), Real(1)).B3 - a;
    Real a32 = (target - a) / b;
    if (a32 <= 0) throw DomainError("fit_alpha: no positive alpha reproduces B3(y,1)");
    return pow(a32, Real(2) / 3);
}

// ---- distributions ----------------------------------------------------

namespace {

RSeries conn_pgf(const BExpansion& be) {
    RSeries e = exp(be.B[0] - be.B_at1[0]);
    return e * be.B[2] * Real(-1) + e * be.B[3] * ((1 + be.B_at1[2]) / be.B_at1[3]);
}

RSeries twoconn_pgf(const BExpansion& be) { return be.B[3] / be.B_at1[3]; }

RSeries threeconn_e(const Real& u, int K) {
    RSeries T3 = T_singular_series(u, K).T3;
    Real T31 = T_singular_coeffs(u, Real(1)).T3;
    return T3 / T31;
}

DegreeDistribution make_dist(Level level, const RSeries& p, std::optional<Real> mu) {
    DegreeDistribution dist;
    dist.family = Family::Planar;
    dist.level = level;
    dist.mu = mu;
    dist.d = p.coeffs();
    // below the minimum degree the coefficients are zero up to rounding
    int min_deg = level == Level::Connected ? 1 : level == Level::TwoConnected ? 2 : 3;
    for (int k = 0; k < min_deg && k <= dist.k_max(); ++k) dist.d[k] = 0;
    return dist;
}

void attach_tail(DegreeDistribution& dist, const Real& exponent, const Real& q) {
    int K = dist.k_max();
    if (K < 20) return;
    int lo = K / 2;
    dist.tail = fit_tail(dist.d, lo, K, exponent, q, std::min(6, (K - lo) / 3));
}

// Radius of p in w: the printed-free w3 for connected/2-connected.
Real q_of_y(const Real& y) { return 1 / w3_of_y(y); }

}  // namespace

ThreeConnDist pgf_planar_3conn(int K) {
    if (K < 3) throw DomainError("pgf_planar_3conn: K >= 3 required");
    Real u = (sqrt(Real(7)) - 1) / 3;
    RSeries e = threeconn_e(u, K);
    Real alpha = (7 + sqrt(Real(7))) / 2;
    RSeries d("w", K);
    for (int k = 1; k <= K; ++k) d[k] = alpha * e[k] / k;
    ThreeConnDist out{make_dist(Level::ThreeConnected, e, std::nullopt), make_dist(Level::ThreeConnected, d, std::nullopt)};
    Real q = sqrt(Real(7)) - 2;
    attach_tail(out.e, Real(1) / 2, q);
    attach_tail(out.d, Real(-1) / 2, q);
    return out;
}

DegreeDistribution pgf_planar_2conn(int K) {
    if (K < 2) throw DomainError("pgf_planar_2conn: K >= 2 required");
    BExpansion be = B_expansion(Real(1), K);
    DegreeDistribution dist = make_dist(Level::TwoConnected, twoconn_pgf(be), std::nullopt);
    attach_tail(dist, Real(-1) / 2, q_of_y(Real(1)));
    return dist;
}

DegreeDistribution pgf_planar_conn(int K) {
    if (K < 1) throw DomainError("pgf_planar_conn: K >= 1 required");
    BExpansion be = B_expansion(Real(1), K);
    DegreeDistribution dist = make_dist(Level::Connected, conn_pgf(be), std::nullopt);
    attach_tail(dist, Real(-1) / 2, q_of_y(Real(1)));
    return dist;
}

namespace {

// -y f'(y)/f(y) by Richardson-extrapolated central differences on log f.
Real log_slope(const std::function<Real(const Real&)>& f, const Real& y) {
    SolverConfig cfg = SolverConfig::standard();
    cfg.target_digits = working_digits() / 2;
    Real ly = log(y);
    Real d = differentiate([&](const Real& s) { return log(f(exp(s))); }, ly, cfg, Real("0.05"));
    return -d;
}

Real mu_of(Level level, const Real& p) {
    switch (level) {
        case Level::Connected: return log_slope(rho_of_y, p);
        case Level::TwoConnected: return log_slope(R_of_y, p);
        case Level::ThreeConnected: {
            // -z r'(z)/r(z) in closed form through u = u0~(z)
            return log_slope(r_of_z, p);
        }
    }
    return Real(0);
}

}  // namespace

Real density_mu_at_one(Level level) { return mu_of(level, Real(1)); }

Real density_parameter(Level level, const Real& mu) {
    Real lo_mu = level == Level::ThreeConnected ? Real(3) / 2 : Real(1);
    if (mu <= lo_mu || mu >= 3) throw SaddleOutOfRange("density: mu outside the admissible range");
    // mu is increasing in log y; bracket by doubling around y = 1.
    auto g = [&](const Real& s) { return mu_of(level, exp(s)) - mu; };
    Real lo = 0, hi = 0;
    Real g0 = g(Real(0));
    if (g0 == 0) return Real(1);
    Real step = g0 < 0 ? Real(1) : Real(-1);
    Real a = 0, ga = g0;
    for (int i = 0; i < 12; ++i) {
        Real b = a + step;
        Real gb;
        try {
            gb = g(b);
        } catch (const Error&) {
            throw SaddleOutOfRange("density: saddle point not reachable");
        }
        if ((ga < 0) != (gb < 0)) {
            lo = a < b ? a : b;
            hi = a < b ? b : a;
            SolverConfig cfg = SolverConfig::in(lo, hi);
            cfg.target_digits = working_digits() / 3;
            return exp(solve_scalar(g, cfg));
        }
        a = b;
        ga = gb;
        step *= 2;
    }
    throw SaddleOutOfRange("density: no saddle point found");
}

DegreeDistribution density_pgf(Level level, const Real& mu, int K) {
    Real p = density_parameter(level, mu);
    DegreeDistribution dist;
    if (level == Level::ThreeConnected) {
        RSeries e = threeconn_e(u0_tilde(p), K);
        RSeries d("w", K);
        for (int k = 1; k <= K; ++k) d[k] = 2 * mu * e[k] / k;
        dist = make_dist(level, d, mu);
        attach_tail(dist, Real(-1) / 2, 1 / (u0_tilde(p) + 1));
        return dist;
    }
    BExpansion be = B_expansion(p, K);
    dist = make_dist(level, level == Level::Connected ? conn_pgf(be) : twoconn_pgf(be), mu);
    attach_tail(dist, Real(-1) / 2, q_of_y(p));
    return dist;
}

PlanarConstants constants_planar() {
    PlanarConstants pc;
    Real s7 = sqrt(Real(7));
    pc.r1 = (7 * s7 - 17) / 32;
    pc.u0 = (s7 - 1) / 3;
    pc.t0 = t_of_y(Real(1));
    PlanarCritical cr = planar_critical(Real(1));
    pc.R1 = cr.R;
    pc.E0 = cr.E0;
    pc.rho = rho_of_y(Real(1));
    pc.q3 = s7 - 2;
    pc.q2 = q_of_y(Real(1));
    pc.alpha3 = (7 + s7) / 2;
    pc.kappa = density_mu_at_one(Level::Connected);
    pc.q1 = 1 / w3_direct(Real(1));
    const int K = 64;
    DegreeDistribution dc = pgf_planar_conn(K), d2 = pgf_planar_2conn(K);
    ThreeConnDist d3 = pgf_planar_3conn(K);
    pc.c1 = dc.tail.c;
    pc.c2 = d2.tail.c;
    pc.c3 = d3.e.tail.c;
    return pc;
}

}  // namespace degdist
