#include "degdist/errors.hpp"
#include "degdist/maps3.hpp"
#include "degdist/planar.hpp"

namespace degdist {

namespace {

using QS = Series<Rational>;
using QB = BiSeries<Rational>;

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

QB lift_x(const QS& s, const QS& proto) {
    QB r("x", s.order(), proto);
    for (int n = 0; n <= s.order(); ++n) r[n] = QS::constant(proto.var(), proto.order(), s[n]);
    return r;
}

// T• terms grouped as t[(i, j-k, k-1)] so that
// T•(x,E,D/E)/(x^2 D) = sum t x^(i-2) E^(j-k) D^(k-1).
struct TTerms {
    std::map<std::tuple<int, int, int>, Rational> t;
    int max_e = 0, max_d = 0;
};

TTerms t_terms(int N) {
    TTerms out;
    for (const auto& [key, c] : T_root_coefficients(N + 2)) {
        auto [i, j, k] = key;
        if (i - 2 > N) continue;
        out.t[{i - 2, j - k, k - 1}] += c;
        out.max_e = std::max(out.max_e, j - k);
        out.max_d = std::max(out.max_d, k - 1);
    }
    return out;
}

std::vector<QS> powers(const QS& a, int m) {
    std::vector<QS> p{QS::constant(a.var(), a.order(), Rational(1))};
    for (int i = 1; i <= m; ++i) p.push_back(p.back() * a);
    return p;
}

QS e_series(int N, const TTerms& tt) {
    QS x = QS::variable("x", N);
    auto xp = powers(x, N);
    return fixed_point(
        [&](const QS& E) {
            auto ep = powers(E, tt.max_e + tt.max_d);
            QS sum("x", N);
            for (const auto& [key, c] : tt.t) {
                auto [a, b, d] = key;
                sum = sum + xp[a] * ep[b + d] * c;
            }
            return exp(x * E * E / (x * E + 1L) + sum) * Rational(2) - 1L;
        },
        QS::constant("x", N, Rational(1)));
}

QB d_series(int N, int Nw, const TTerms& tt) {
    QS E = e_series(N, tt);
    QS x = QS::variable("x", N);
    QS wvar = QS::variable("w", Nw);
    QB onep = QB::constant("x", N, wvar + 1L);
    QB cc = lift_x(x * E / (x * E + 1L), wvar);
    auto xp = powers(x, N);
    auto ep = powers(E, tt.max_e);
    // x^a E^b grouped by the power of D
    std::vector<QB> coef(tt.max_d + 1, QB("x", N, wvar));
    for (const auto& [key, c] : tt.t) {
        auto [a, b, d] = key;
        coef[d] = coef[d] + lift_x(xp[a] * ep[b] * c, wvar);
    }
    return fixed_point(
        [&](const QB& D) {
            QB sum = coef[0];
            QB dp = D;
            for (int d = 1; d <= tt.max_d; ++d) {
                sum = sum + coef[d] * dp;
                if (d < tt.max_d) dp = dp * D;
            }
            return onep * exp(cc * D + sum) - 1L;
        },
        QB::constant("x", N, wvar));
}

QB broot(int N, int Nw) {
    TTerms tt = t_terms(N);
    QB D = d_series(N, Nw, tt);
    QS wvar = QS::variable("w", Nw);
    // dB•/dw = x (1+D)/(1+w) at y = 1
    QB g = (D + 1L) / QB::constant("x", N, wvar + 1L);
    QB integ("x", N, wvar);
    for (int n = 0; n <= N; ++n) integ[n] = integrate(g[n]).truncate(Nw);
    return shift_up(integ, 1).truncate(N);
}

}  // namespace

BiSeries<Rational> planar_broot_series(int N) { return broot(N, N + 1); }

std::vector<std::vector<BigInt>> planar_2conn_rooted_counts(int n_max) {
    return to_counts(broot(n_max, n_max + 1), n_max);
}

std::vector<std::vector<BigInt>> planar_rooted_counts(int n_max) {
    const int N = n_max + 1, Nw = n_max + 1;
    QB b = broot(N, Nw);
    QS bp("x", N);
    for (int n = 0; n <= N; ++n) bp[n] = evaluate(b[n], Rational(1));
    QS x = QS::variable("x", N);
    QS F = fixed_point([&](const QS& f) { return x * exp(compose(bp, f)); }, QS("x", N));
    QB c = exp(compose(b, F.truncate(n_max)));
    return to_counts(c, n_max);
}

}  // namespace degdist
