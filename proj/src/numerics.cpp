#include "degdist/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace degdist {

PrecisionScope::PrecisionScope(int digits) : previous_(Real::default_precision()) {
    if (digits < kMinDigits || digits > kMaxDigits + 100)
        throw DomainError("precision out of range: " + std::to_string(digits));
    Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

int working_digits() { return static_cast<int>(Real::default_precision()); }

Real eps_digits(int digits) { return pow(Real(10), -digits); }

Real real_pi() { return boost::math::constants::pi<Real>(); }

Real to_real(const Rational& q) {
    return Real(numerator(q).str()) / Real(denominator(q).str());
}

std::string fmt(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << std::fixed << x;
    return os.str();
}

SolverConfig SolverConfig::standard() {
    SolverConfig c;
    c.target_digits = working_digits() - 10;
    return c;
}

SolverConfig SolverConfig::in(Real lo, Real hi) {
    SolverConfig c = standard();
    c.bracket = std::make_pair(std::move(lo), std::move(hi));
    return c;
}

void SolverConfig::validate() const {
    if (target_digits <= 0 || max_iterations <= 0)
        throw DomainError("solver config: non-positive target or iteration count");
    if (target_digits > working_digits() - 10)
        throw DomainError("solver config: target digits exceed precision - 10");
    if (bracket && !(bracket->first < bracket->second))
        throw NoSignChange("solver config: empty bracket");
}

namespace {

Real diff_step(const Real& x) {
    Real scale = abs(x) > 1 ? abs(x) : Real(1);
    return scale * eps_digits(working_digits() / 3);
}

Real numeric_slope(const ScalarFn& f, const Real& x, const std::optional<std::pair<Real, Real>>& br) {
    Real h = diff_step(x);
    if (br) {
        if (x - h <= br->first) return (f(x + h) - f(x)) / h;
        if (x + h >= br->second) return (f(x) - f(x - h)) / h;
    }
    return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace

Real solve_scalar(const ScalarFn& f, const SolverConfig& cfg, std::optional<Real> guess) {
    cfg.validate();
    const Real tol = eps_digits(cfg.target_digits);
    const Real xtol = eps_digits(working_digits() - 4);

    if (cfg.bracket) {
        Real a = cfg.bracket->first, b = cfg.bracket->second;
        Real fa = f(a), fb = f(b);
        if (abs(fa) < tol) return a;
        if (abs(fb) < tol) return b;
        bool sign_change = (fa < 0) != (fb < 0);
        if (sign_change) {
            Real x = guess && *guess > a && *guess < b ? *guess : (a + b) / 2;
            for (int it = 0; it < cfg.max_iterations; ++it) {
                Real fx = f(x);
                if (abs(fx) < tol) return x;
                if ((fx < 0) == (fa < 0)) {
                    a = x;
                    fa = fx;
                } else {
                    b = x;
                }
                Real d = numeric_slope(f, x, cfg.bracket);
                Real xn = d != 0 ? x - fx / d : a;
                if (!(xn > a && xn < b)) xn = (a + b) / 2;
                if (abs(b - a) < xtol * (1 + abs(x))) return xn;
                x = xn;
            }
            throw NoConvergence("solve_scalar: no convergence inside bracket");
        }
        if (!guess) throw NoSignChange("solve_scalar: no sign change on bracket and no guess");
    }
    if (!guess) throw NoSignChange("solve_scalar: neither bracket nor guess");

    Real x = *guess;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        Real fx = f(x);
        if (abs(fx) < tol) return x;
        Real d = numeric_slope(f, x, cfg.bracket);
        if (d == 0) break;
        Real step = fx / d;
        Real xn = x - step;
        if (cfg.bracket) {
            // Damp steps that would leave the admissible interval.
            int tries = 0;
            while (!(xn > cfg.bracket->first && xn < cfg.bracket->second) && tries++ < 60) {
                step /= 2;
                xn = x - step;
            }
        }
        x = xn;
    }
    if (cfg.bracket) throw NoSignChange("solve_scalar: Newton from guess failed and bracket has no sign change");
    throw NoConvergence("solve_scalar: Newton did not converge");
}

std::array<Real, 2> solve_system2(const PairFn& F, std::array<Real, 2> x, const SolverConfig& cfg) {
    cfg.validate();
    const Real tol = eps_digits(cfg.target_digits);
    auto norm = [](const std::array<Real, 2>& v) { return abs(v[0]) + abs(v[1]); };
    auto r = F(x[0], x[1]);
    for (int it = 0; it < cfg.max_iterations; ++it) {
        if (abs(r[0]) < tol && abs(r[1]) < tol) return x;
        Real h0 = diff_step(x[0]), h1 = diff_step(x[1]);
        auto fa = F(x[0] + h0, x[1]), fb = F(x[0] - h0, x[1]);
        auto fc = F(x[0], x[1] + h1), fd = F(x[0], x[1] - h1);
        Real j00 = (fa[0] - fb[0]) / (2 * h0), j10 = (fa[1] - fb[1]) / (2 * h0);
        Real j01 = (fc[0] - fd[0]) / (2 * h1), j11 = (fc[1] - fd[1]) / (2 * h1);
        Real det = j00 * j11 - j01 * j10;
        Real scale = abs(j00 * j11) + abs(j01 * j10);
        if (scale == 0 || abs(det) < scale * eps_digits(working_digits() / 2))
            throw SingularJacobian("solve_system2: singular Jacobian");
        Real d0 = (j11 * r[0] - j01 * r[1]) / det;
        Real d1 = (-j10 * r[0] + j00 * r[1]) / det;
        Real lambda = 1;
        std::array<Real, 2> xn{};
        std::array<Real, 2> rn{};
        for (int k = 0; k < 40; ++k) {
            xn = {x[0] - lambda * d0, x[1] - lambda * d1};
            try {
                rn = F(xn[0], xn[1]);
                if (norm(rn) < norm(r) || k == 39) break;
            } catch (const Error&) {
                if (k == 39) throw;
            }
            lambda /= 2;
        }
        x = xn;
        r = rn;
    }
    if (abs(r[0]) < tol && abs(r[1]) < tol) return x;
    throw NoConvergence("solve_system2: Newton did not converge");
}

Derivative differentiate_with_error(const ScalarFn& f, const Real& x, const SolverConfig& cfg,
                                    std::optional<Real> initial_step) {
    cfg.validate();
    const int ntab = 14;
    const Real con = Real(14) / 10, con2 = con * con;
    Real h = initial_step ? *initial_step : Real(1) / 20 * (abs(x) > 1 ? abs(x) : Real(1));
    std::vector<std::vector<Real>> a(ntab, std::vector<Real>(ntab));
    a[0][0] = (f(x + h) - f(x - h)) / (2 * h);
    Real err = Real(1e300), best = a[0][0];
    for (int i = 1; i < ntab; ++i) {
        h /= con;
        a[0][i] = (f(x + h) - f(x - h)) / (2 * h);
        Real fac = con2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1);
            fac *= con2;
            Real e = std::max(abs(a[j][i] - a[j - 1][i]), abs(a[j][i] - a[j - 1][i - 1]));
            if (e <= err) {
                err = e;
                best = a[j][i];
            }
        }
        if (abs(a[i][i] - a[i - 1][i - 1]) >= 2 * err) break;
    }
    if (err > eps_digits(cfg.target_digits / 2))
        throw NoConvergence("differentiate: extrapolation did not stabilize (error " +
                            fmt(err, 3) + ")");
    return {best, err};
}

Real differentiate(const ScalarFn& f, const Real& x, const SolverConfig& cfg,
                   std::optional<Real> initial_step) {
    return differentiate_with_error(f, x, cfg, initial_step).value;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, working_digits());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const Real pi = real_pi();
    const Real tol = eps_digits(working_digits() - 3);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real z = cos(pi * (i + Real(3) / 4) / (n + Real(1) / 2));
        Real dp;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = 0;
            for (int j = 1; j <= n; ++j) {
                Real p2 = p1;
                p1 = p0;
                p0 = ((2 * j - 1) * z * p1 - (j - 1) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1);
            Real dz = p0 / dp;
            z -= dz;
            if (abs(dz) < tol) break;
        }
        Real p0 = 1, p1 = 0;
        for (int j = 1; j <= n; ++j) {
            Real p2 = p1;
            p1 = p0;
            p0 = ((2 * j - 1) * z * p1 - (j - 1) * p2) / j;
        }
        dp = n * (z * p0 - p1) / (z * z - 1);
        Real w = 2 / ((1 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

Real integrate(const ScalarFn& f, const Real& a, const Real& b, int target_digits) {
    Real prev = integrate_gauss(f, a, b, 20);
    for (int n = 40; n <= 640; n *= 2) {
        Real cur = integrate_gauss(f, a, b, n);
        if (abs(cur - prev) <= eps_digits(target_digits) * (1 + abs(cur))) return cur;
        prev = cur;
    }
    throw NoConvergence("integrate: Gauss-Legendre estimates did not settle");
}

std::vector<Real> least_squares(std::vector<std::vector<Real>> A, std::vector<Real> b) {
    const std::size_t m = A.size();
    if (m == 0) throw DomainError("least_squares: empty system");
    const std::size_t n = A[0].size();
    if (m < n) throw DomainError("least_squares: underdetermined system");
    for (std::size_t k = 0; k < n; ++k) {
        Real norm = 0;
        for (std::size_t i = k; i < m; ++i) norm += A[i][k] * A[i][k];
        norm = sqrt(norm);
        if (norm == 0) throw SingularJacobian("least_squares: rank deficient");
        Real alpha = A[k][k] > 0 ? -norm : norm;
        std::vector<Real> v(m);
        for (std::size_t i = k; i < m; ++i) v[i] = A[i][k];
        v[k] -= alpha;
        Real vv = 0;
        for (std::size_t i = k; i < m; ++i) vv += v[i] * v[i];
        for (std::size_t j = k; j < n; ++j) {
            Real s = 0;
            for (std::size_t i = k; i < m; ++i) s += v[i] * A[i][j];
            s = 2 * s / vv;
            for (std::size_t i = k; i < m; ++i) A[i][j] -= s * v[i];
        }
        Real s = 0;
        for (std::size_t i = k; i < m; ++i) s += v[i] * b[i];
        s = 2 * s / vv;
        for (std::size_t i = k; i < m; ++i) b[i] -= s * v[i];
    }
    std::vector<Real> x(n);
    for (std::size_t k = n; k-- > 0;) {
        Real s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= A[k][j] * x[j];
        x[k] = s / A[k][k];
    }
    return x;
}

std::vector<Real> polyfit(const std::vector<Real>& xs, const std::vector<Real>& ys, int deg) {
    std::vector<std::vector<Real>> A(xs.size(), std::vector<Real>(deg + 1));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Real p = 1;
        for (int j = 0; j <= deg; ++j) {
            A[i][j] = p;
            p *= xs[i];
        }
    }
    return least_squares(std::move(A), ys);
}

}  // namespace degdist
