#include "degdist/maps3.hpp"

#include "degdist/errors.hpp"

namespace degdist {

namespace {

using QS = Series<Rational>;
using QB = BiSeries<Rational>;

Real tol_residual() { return eps_digits(working_digits() - 8); }

// Lifts a bivariate series to a trivariate one constant in the innermost variable.
TriSeries lift3(const QB& b, const std::string& inner, int Nw) {
    QS w0(inner, Nw);
    TriSeries t(b.var(), b.order(), QB(b[0].var(), b[0].order(), w0));
    for (int i = 0; i <= b.order(); ++i)
        for (int j = 0; j <= b[i].order(); ++j) t[i][j][0] = b[i][j];
    return t;
}

TriSeries inner_var3(const std::string& a, int Na, const std::string& b, int Nb, const std::string& c, int Nc) {
    QS w = QS::variable(c, Nc);
    TriSeries t(a, Na, QB(b, Nb, QS(c, Nc)));
    t[0][0] = w;
    return t;
}

TriSeries middle_var3(const std::string& a, int Na, const std::string& b, int Nb, const std::string& c, int Nc) {
    TriSeries t(a, Na, QB(b, Nb, QS(c, Nc)));
    t[0][1][0] = 1;
    return t;
}

TriSeries outer_var3(const std::string& a, int Na, const std::string& b, int Nb, const std::string& c, int Nc) {
    TriSeries t(a, Na, QB(b, Nb, QS(c, Nc)));
    if (Na >= 1) t[1][0][0] = 1;
    return t;
}

// Divides by the innermost variable once (exact).
TriSeries div_inner(const TriSeries& t) {
    int Nw = t[0][0].order();
    TriSeries r(t.var(), t.order(), QB(t[0].var(), t[0].order(), QS(t[0][0].var(), Nw - 1)));
    for (int i = 0; i <= t.order(); ++i)
        for (int j = 0; j <= t[i].order(); ++j) r[i][j] = shift_down(t[i][j], 1);
    return r;
}

// R, S as series in X (outer) and Y (inner).
std::array<QB, 2> rs_series(int Nx, int Ny) {
    QB X = QB::variable("X", Nx, QS("Y", Ny));
    QB Y = QB::constant("X", Nx, QS::variable("Y", Ny));
    QB R = fixed_point(
        [&](const QB& r) {
            QB s = Y * pow(r + 1L, 2);
            return X * pow(s + 1L, 2);
        },
        QB("X", Nx, QS("Y", Ny)), 4 * (Nx + Ny) + 8, false);
    QB S = Y * pow(R + 1L, 2);
    return {R, S};
}

}  // namespace

std::array<Real, 2> solve_RS(const Real& X, const Real& Y) {
    // R = X(1 + Y(1+R)^2)^2, Newton from the fixed-point iterate.
    Real R = 0;
    for (int i = 0; i < 30; ++i) {
        Real s = Y * (1 + R) * (1 + R);
        R = X * (1 + s) * (1 + s);
        if (!isfinite(R) || R > 1e6) throw BranchLost("solve_RS: iteration diverged");
    }
    for (int it = 0; it < 200; ++it) {
        Real s = Y * (1 + R) * (1 + R);
        Real f = R - X * (1 + s) * (1 + s);
        Real fp = 1 - X * 2 * (1 + s) * 2 * Y * (1 + R);
        if (abs(fp) < eps_digits(working_digits() / 3)) throw BranchLost("solve_RS: Jacobian vanishes");
        Real step = f / fp;
        R -= step;
        if (abs(step) <= eps_digits(working_digits() - 5) * (1 + abs(R))) {
            if (R < 0 && X > 0) throw BranchLost("solve_RS: left the small branch");
            return {R, Y * (1 + R) * (1 + R)};
        }
    }
    throw NoConvergence("solve_RS: Newton did not converge");
}

Real w_root(const Real& R, const Real& S, const Real& W) {
    Real d = map_w2(R, S, W);
    if (d < 0) throw NegativeDiscriminant("w_root: w2 < 0");
    return (map_w1(R, S, W) - (R - W + 1) * sqrt(d)) / (2 * (S + 1) * (S + 1) * (S * W + R * R + 2 * R + 1));
}

Real w_root_printed(const Real& R, const Real& S, const Real& W) {
    Real d = map_w2(R, S, W);
    if (d < 0) throw NegativeDiscriminant("w_root_printed: w2 < 0");
    return (-map_w1(R, S, W) + (R - W + 1) * sqrt(d)) / (2 * (S + 1) * (S + 1) * (S * W + R * R + 2 * R + 1));
}

Real w_quadratic_residual(const MapGfPoint& p) {
    const Real &X = p.X, &Y = p.Y, &W = p.W, &F = p.F1, &w = p.w;
    return Y * (1 - w) * (X - w * F) * W - w * F * (-X * Y * W * W + X * Y * W - X * W + 1 - w + X);
}

MapGfPoint Q_eval(const Real& X, const Real& Y, const Real& W) {
    MapGfPoint p;
    p.X = X;
    p.Y = Y;
    p.W = W;
    auto rs = solve_RS(X, Y);
    p.R = rs[0];
    p.S = rs[1];
    Real den = 1 + p.R + p.S;
    p.F1 = p.R * p.S / (den * den * den);
    p.w = w_root(p.R, p.S, W);
    p.Q = X * Y * W * (1 / (1 + W * Y) + 1 / (1 + X) - 1) - p.F1 * p.w;
    return p;
}

Real T_root(const Real& x, const Real& z, const Real& w) {
    auto uv = solve_RS(x * z, z);
    const Real &u = uv[0], &v = uv[1];
    Real d = map_w2(u, v, w);
    if (d < 0) throw NegativeDiscriminant("T_root: w2 < 0");
    Real num = map_w1(u, v, w) - (u - w + 1) * sqrt(d);
    Real c = 1 + u + v;
    return x * x * z * z * w * w / 2 *
           (1 / (1 + w * z) + 1 / (1 + x * z) - 1 -
            (u + 1) * (u + 1) * num / (2 * w * (v * w + u * u + 2 * u + 1) * c * c * c));
}

Real T_root_via_Q(const Real& x, const Real& z, const Real& w) {
    return x * w / 2 * Q_eval(x * z, z, w).Q;
}

QuadOracle quad_system_oracle(int Nx, int Ny, int Nw) {
    auto rs = rs_series(Nx, Ny);
    TriSeries R = lift3(rs[0], "W", Nw), S = lift3(rs[1], "W", Nw);
    TriSeries X = outer_var3("X", Nx, "Y", Ny, "W", Nw);
    TriSeries Y = middle_var3("X", Nx, "Y", Ny, "W", Nw);
    TriSeries W = inner_var3("X", Nx, "Y", Ny, "W", Nw);
    TriSeries den = R + S + 1L;
    TriSeries F1 = R * S / (den * den * den);
    // phi = F1 / (XY) = (S+1)^2 (R+1)^2 / (1+R+S)^3
    TriSeries phi = pow(S + 1L, 2) * pow(R + 1L, 2) / (den * den * den);

    QuadOracle o;
    TriSeries cden = (S + 1L) * (S + 1L) * (S * W + R * R + R * 2L + 1L) * 2L;
    o.w_closed = (map_w1(R, S, W) - (R - W + 1L) * sqrt(map_w2(R, S, W))) / cden;

    // The quadratic divided by XY: (1-w)(1 - w phi Y) W = w phi (-XYW^2+XYW-XW+1-w+X),
    // iterated as w <- (1-w)(1-w phi Y) W / (phi (1 - w + X - XW + XYW - XYW^2)).
    int total = Nx + Ny + Nw + 4;
    o.w_iter = fixed_point(
        [&](const TriSeries& w) {
            TriSeries one_m = 1L - w;
            TriSeries rhs = phi * (one_m + X - X * W + X * Y * W - X * Y * W * W);
            return one_m * (1L - w * phi * Y) * W / rhs;
        },
        TriSeries("X", Nx, QB("Y", Ny, QS("W", Nw))), 4 * total, false);

    TriSeries base = X * Y * W * (1L / (W * Y + 1L) + 1L / (X + 1L) - 1L);
    o.Q_closed = base - F1 * o.w_closed;
    o.Q_iter = base - F1 * o.w_iter;
    return o;
}

namespace {

// T• with z outer, x middle, w inner.
TriSeries T_series(int n_max) {
    int Nz = 3 * n_max - 6 > 2 ? 3 * n_max - 6 : 2;
    int Nx = n_max, Nw = n_max + 1;
    QB z = QB::variable("z", Nz, QS("x", Nx));
    QB x = QB::constant("z", Nz, QS::variable("x", Nx));
    QB u = fixed_point(
        [&](const QB& uu) {
            QB v = z * pow(uu + 1L, 2);
            return x * z * pow(v + 1L, 2);
        },
        QB("z", Nz, QS("x", Nx)));
    QB v = z * pow(u + 1L, 2);
    TriSeries U = lift3(u, "w", Nw + 1), V = lift3(v, "w", Nw + 1);
    TriSeries W = inner_var3("z", Nz, "x", Nx, "w", Nw + 1);
    TriSeries Z = outer_var3("z", Nz, "x", Nx, "w", Nw + 1);
    TriSeries Xs = middle_var3("z", Nz, "x", Nx, "w", Nw + 1);
    TriSeries num = map_w1(U, V, W) - (U - W + 1L) * sqrt(map_w2(U, V, W));
    TriSeries num_w = div_inner(num);
    auto cut = [&](const TriSeries& t) {
        TriSeries r(t.var(), t.order(), QB(t[0].var(), t[0].order(), QS(t[0][0].var(), Nw)));
        for (int i = 0; i <= t.order(); ++i)
            for (int j = 0; j <= t[i].order(); ++j) r[i][j] = t[i][j].truncate(Nw);
        return r;
    };
    U = cut(U);
    V = cut(V);
    W = cut(W);
    Z = cut(Z);
    Xs = cut(Xs);
    TriSeries c = U + V + 1L;
    TriSeries frac = pow(U + 1L, 2) * num_w / ((V * W + U * U + U * 2L + 1L) * c * c * c * 2L);
    TriSeries inner = 1L / (W * Z + 1L) + 1L / (Xs * Z + 1L) - 1L - frac;
    return Xs * Xs * Z * Z * W * W * inner / Rational(2);
}

}  // namespace

TCoeffs T_root_coefficients(int n_max) {
    TriSeries t = T_series(n_max);
    TCoeffs out;
    for (int j = 0; j <= t.order(); ++j)
        for (int i = 0; i <= t[j].order(); ++i)
            for (int k = 0; k <= t[j][i].order(); ++k)
                if (!t[j][i][k].is_zero()) out[{i, j, k}] = t[j][i][k];
    return out;
}

TCoeffs T_root_coefficients_via_quadratic(int n_max) {
    // Q(X,Y,W) with X = xz, Y = z: q_{a,b,k} contributes x^a z^(a+b) to Q(xz,z,w),
    // and (xw/2) shifts x and w by one. Degrees: vertices of the map n = a+? are
    // bounded by total order; use orders large enough for x^n_max.
    int N = n_max;
    QuadOracle o = quad_system_oracle(N, 2 * N, N + 1);
    TCoeffs out;
    for (int a = 0; a <= o.Q_iter.order(); ++a)
        for (int b = 0; b <= o.Q_iter[a].order(); ++b)
            for (int k = 0; k <= o.Q_iter[a][b].order(); ++k) {
                const Rational& q = o.Q_iter[a][b][k];
                if (q.is_zero()) continue;
                int i = a + 1, j = a + b;
                if (i > n_max || k + 1 > N + 1) continue;
                out[{i, j, k + 1}] = q / 2;
            }
    return out;
}

}  // namespace degdist
