#include "degdist/validate.hpp"

#include "degdist/enumoracle.hpp"
#include "degdist/errors.hpp"
#include "degdist/maps3.hpp"
#include "degdist/outerplanar.hpp"
#include "degdist/planar.hpp"
#include "degdist/seriesparallel.hpp"

#include <json.hpp>

#include <chrono>
#include <optional>
#include <random>
#include <sstream>

namespace degdist {

namespace {

using Clock = std::chrono::steady_clock;
using QS = Series<Rational>;

Real square(const Real& a) { return a * a; }

// Twelve significant digits, so that small residuals stay visible.
std::string sig(const Real& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const char* kTable1Rows[5] = {"outerplanar", "series-parallel", "planar", "planar-2conn", "planar-3conn"};
const char* kTable1[5][6] = {
    {"0.1365937", "0.2875331", "0.2428739", "0.1550795", "0.0874382", "0.0460030"},
    {"0.1102133", "0.3563715", "0.2233570", "0.1257639", "0.0717254", "0.0421514"},
    {"0.0367284", "0.1625794", "0.2354360", "0.1867737", "0.1295023", "0.0861805"},
    {"0", "0.1728434", "0.2481213", "0.1925340", "0.1325252", "0.0879779"},
    {"0", "0", "0.3274859", "0.2432187", "0.1594160", "0.1010441"},
};

// Distributions and constants shared between sections.
struct Shared {
    int K = 64;
    std::optional<OuterConstants> oc;
    std::optional<SpConstants> sc;
    std::optional<DegreeDistribution> outer_conn, outer_2conn, sp_conn, sp_2conn, pl_conn, pl_2conn;
    std::optional<ThreeConnDist> pl_3conn;
    std::optional<Real> kappa;

    const OuterConstants& outer() {
        if (!oc) oc = constants_outer(SolverConfig::standard());
        return *oc;
    }
    const SpConstants& sp() {
        if (!sc) sc = constants_sp(SolverConfig::standard());
        return *sc;
    }
    const DegreeDistribution& get(std::optional<DegreeDistribution>& slot, DegreeDistribution (*f)(int)) {
        if (!slot) slot = f(K);
        return *slot;
    }
    const DegreeDistribution& oconn() { return get(outer_conn, pgf_outer_conn); }
    const DegreeDistribution& o2conn() { return get(outer_2conn, pgf_outer_2conn); }
    const DegreeDistribution& sconn() { return get(sp_conn, pgf_sp_conn); }
    const DegreeDistribution& s2conn() { return get(sp_2conn, pgf_sp_2conn); }
    const DegreeDistribution& pconn() { return get(pl_conn, pgf_planar_conn); }
    const DegreeDistribution& p2conn() { return get(pl_2conn, pgf_planar_2conn); }
    const ThreeConnDist& p3conn() {
        if (!pl_3conn) pl_3conn = pgf_planar_3conn(K);
        return *pl_3conn;
    }
    const Real& planar_kappa() {
        if (!kappa) kappa = density_mu_at_one(Level::Connected);
        return *kappa;
    }
    const DegreeDistribution& row(int i) {
        switch (i) {
            case 0: return oconn();
            case 1: return sconn();
            case 2: return pconn();
            case 3: return p2conn();
            default: return p3conn().d;
        }
    }
};

class Ctx {
public:
    Ctx(const ValidateOptions& opt, const CheckSink& sink, std::vector<CheckResult>& out)
        : opt_(opt), sink_(sink), out_(out) {}

    void begin(const std::string& section) {
        section_ = section;
        criterion_ = section_criterion(section);
    }
    const std::string& section() const { return section_; }

    // |value - expected| <= tol
    bool near(const std::string& name, const Real& value, const Real& expected, double tol, const std::string& detail = "",
              int criterion = -1) {
        Real e = expected + perturbation(name);
        bool pass = abs(value - e) <= tol;
        return emit(name, pass ? "pass" : "fail", sig(value, 12), sig(e, 12), tol, detail, criterion);
    }
    bool near(const std::string& name, const Real& value, const char* expected, double tol, const std::string& detail = "",
              int criterion = -1) {
        return near(name, value, Real(expected), tol, detail, criterion);
    }
    // |value/expected - 1| <= tol
    bool rel(const std::string& name, const Real& value, const Real& expected, double tol, const std::string& detail = "",
             int criterion = -1) {
        Real e = expected + perturbation(name);
        bool pass = e != 0 ? abs(value / e - 1) <= tol : value == 0;
        return emit(name, pass ? "pass" : "fail", sig(value, 12), sig(e, 12), tol, detail, criterion);
    }
    bool truth(const std::string& name, bool pass, const std::string& detail = "", int criterion = -1) {
        if (perturbation(name) != 0) pass = false;
        return emit(name, pass ? "pass" : "fail", pass ? "true" : "false", "true", 0, detail, criterion);
    }
    // A printed formula that is known to disagree with the authoritative value.
    void mismatch(const std::string& name, const Real& printed, const Real& authoritative, const Real& reference,
                  double tol, const std::string& detail) {
        Real ref = reference + perturbation(name);
        bool auth_ok = abs(authoritative - ref) <= tol;
        bool printed_differs = abs(printed - ref) > tol;
        std::string status = auth_ok && printed_differs ? "expected-mismatch" : "fail";
        std::string d = detail + "; printed " + sig(printed, 12) + ", authoritative " + sig(authoritative, 12);
        if (!auth_ok) d += "; authoritative value misses the reference";
        if (!printed_differs) d += "; printed formula unexpectedly agrees";
        emit(name, status, sig(authoritative, 12), sig(ref, 12), tol, d, -1);
    }
    // Auxiliary report: recorded, not part of any criterion.
    void report(const std::string& name, const Real& value, const Real& reference, double tol, const std::string& detail) {
        bool pass = abs(value - reference) <= tol;
        emit(name, pass ? "pass" : "fail", sig(value, 12), sig(reference, 12), tol, detail, 0);
    }
    void error(const std::string& name, const std::string& what) { emit(name, "error", "", "", 0, what, -1); }

    int K() const { return opt_.kmax; }
    const ValidateOptions& opt() const { return opt_; }

private:
    double perturbation(const std::string& name) const {
        auto it = opt_.perturb.find(name);
        return it == opt_.perturb.end() ? 0.0 : it->second;
    }
    bool emit(const std::string& name, const std::string& status, std::string value, std::string expected, double tol,
              const std::string& detail, int criterion) {
        CheckResult r;
        r.criterion = criterion < 0 ? criterion_ : criterion;
        r.section = section_;
        r.name = name;
        r.status = status;
        r.value = std::move(value);
        r.expected = std::move(expected);
        r.tol = tol;
        r.detail = detail;
        r.seconds = seconds_since(last_);
        last_ = Clock::now();
        out_.push_back(r);
        if (sink_) sink_(r);
        return r.ok();
    }

    const ValidateOptions& opt_;
    const CheckSink& sink_;
    std::vector<CheckResult>& out_;
    std::string section_;
    int criterion_ = 0;
    Clock::time_point last_ = Clock::now();
};

// ---- criterion 1 --------------------------------------------------------

void run_table1(Ctx& c, Shared& s) {
    auto t0 = Clock::now();
    for (int r = 0; r < 5; ++r) {
        const DegreeDistribution& d = s.row(r);
        for (int k = 1; k <= 6; ++k)
            c.near(std::string("table1.") + kTable1Rows[r] + ".d" + std::to_string(k), d.d[k], kTable1[r][k - 1], 1e-6);
    }
    double el = seconds_since(t0);
    c.truth("table1.runtime", el < 300, "seconds " + std::to_string(el) + " (budget 300)");
}

// ---- criterion 2 --------------------------------------------------------

void run_table2(Ctx& c, Shared& s) {
    const int digits = working_digits();
    Real exact_tol = eps_digits(digits - 10);
    const OuterConstants& oc = s.outer();
    c.near("table2.q.outerplanar", oc.q, "0.3808138", 1e-7);
    // sqrt2 - 1 recovered from consecutive closed-form coefficients
    const DegreeDistribution& o2 = s.o2conn();
    Real qr = o2.d[11] / o2.d[10] * 9 / 10;
    c.near("table2.q.outerplanar-2conn", qr, sqrt(Real(2)) - 1, exact_tol.convert_to<double>(),
           "d_11 (k-2)/(d_10 (k-1)) vs the radical");
    const SpConstants& sc = s.sp();
    c.near("table2.q.series-parallel", sc.q_conn, "0.7504161", 1e-7);
    c.near("table2.q.series-parallel-2conn", sc.q_2conn, "0.7620402", 1e-7);
    Real q1 = 1 / w3_direct(Real(1)), q2 = 1 / w3_of_y(Real(1));
    c.near("table2.q.planar", q1, "0.6734506", 1e-7, "branch point of T• reached by D(R,1,w)/E0");
    c.near("table2.q.planar-2conn", q2, "0.6734506", 1e-7, "D0(1,w3) = t0/(1-t0)");
    c.near("table2.q.planar-equal", q1 - q2, Real(0), 1e-8);
    Real u0 = (sqrt(Real(7)) - 1) / 3;
    c.near("table2.q.planar-3conn", 1 / (u0 + 1), sqrt(Real(7)) - 2, exact_tol.convert_to<double>(), "1/(u0+1) vs the radical");
    c.near("table2.c.series-parallel", s.sconn().tail.c, "3.5952391", 1e-3, "fit on [K/2, K]");
    c.near("table2.c.series-parallel-2conn", s.s2conn().tail.c, "3.7340799", 1e-3, "fit on [K/2, K]");
    c.near("table2.c.planar", s.pconn().tail.c, "3.0175067", 1e-3, "fit on [K/2, K]");
    c.near("table2.c.planar-2conn", s.p2conn().tail.c, "3.0826285", 1e-3, "fit on [K/2, K]");
    c.near("table2.c.planar-3conn", s.p3conn().e.tail.c, "0.9313492", 1e-3, "e_k fit on [K/2, K]");
    int lo = std::max(2, c.K() / 2);
    OuterFit f = fit_outer_c1(s.oconn(), lo, c.K(), oc.c2, 3);
    c.near("table2.c1.outerplanar", f.c1, "0.667187", 1e-3,
           "c2 held at 2 sqrt(tau/(2q)); analytic c1 = " + fmt(oc.c1, 8));
    c.near("table2.c2.outerplanar", oc.c2, "0.947130", 1e-3, "saddle point of p(w) near 1/q");
}

// ---- criterion 3 --------------------------------------------------------

void run_identities(Ctx& c, Shared& s) {
    struct Fam {
        const char* name;
        const DegreeDistribution* d;
        Real rho;
        const char* rho_ref;
    };
    std::vector<Fam> fams = {
        {"outerplanar", &s.oconn(), s.outer().rho, "0.1365937"},
        {"series-parallel", &s.sconn(), s.sp().rho, "0.1102133"},
        {"planar", &s.pconn(), rho_of_y(Real(1)), "0.0367284"},
    };
    for (auto& f : fams) {
        std::string n = f.name;
        c.near("identities.d0." + n, f.d->d[0], Real(0), 0);
        c.near("identities.d1-rho." + n, f.d->d[1], f.rho, 1e-10);
        c.near("identities.rho." + n, f.rho, f.rho_ref, 1e-7);
    }
    Real kp = s.planar_kappa();
    c.near("identities.kappa.planar", kp, "2.21326", 1e-5, "-y rho'(y)/rho(y) at y = 1");
    c.near("identities.d2-2kappa-d1.series-parallel", s.sconn().d[2], 2 * Real("1.61673") * s.sconn().d[1], 1e-4);
    c.near("identities.d2-2kappa-d1.planar", s.pconn().d[2], 2 * kp * s.pconn().d[1], 1e-4);
    struct Dist {
        const char* name;
        const DegreeDistribution* d;
    };
    std::vector<Dist> all = {{"outerplanar", &s.oconn()},    {"outerplanar-2conn", &s.o2conn()},
                             {"series-parallel", &s.sconn()}, {"series-parallel-2conn", &s.s2conn()},
                             {"planar", &s.pconn()},          {"planar-2conn", &s.p2conn()},
                             {"planar-3conn", &s.p3conn().d}, {"planar-3conn-e", &s.p3conn().e}};
    for (auto& d : all) {
        c.near(std::string("identities.sum.") + d.name, d.d->total(), Real(1), 1e-4);
        bool nonneg = true, bounded = true;
        Real acc = 0;
        for (const Real& x : d.d->d) {
            if (x < 0) nonneg = false;
            acc += x;
            if (acc > 1 + eps_digits(20)) bounded = false;
        }
        c.truth(std::string("identities.range.") + d.name, nonneg && bounded, "d_k >= 0 and partial sums <= 1");
    }
    c.near("identities.mean.planar", s.pconn().mean(), "4.42652", 1e-3);
    c.near("identities.mean.series-parallel", s.sconn().mean(), "3.23346", 1e-3);
    c.near("identities.mean.planar-3conn", s.p3conn().d.mean(), (7 + sqrt(Real(7))) / 2, 1e-3);
}

// ---- criterion 4 --------------------------------------------------------

using Counts = std::vector<std::vector<BigInt>>;

bool rows_match(const Counts& series, int n, const LevelCounts& lc, std::string& why) {
    for (int k = 0; k <= n; ++k) {
        BigInt want = k < static_cast<int>(lc.by_degree.size()) ? BigInt(lc.by_degree[k]) : BigInt(0);
        BigInt got = k < static_cast<int>(series[n].size()) ? series[n][k] : BigInt(0);
        if (got != want) {
            why = "k=" + std::to_string(k) + ": series " + got.str() + ", enumeration " + want.str();
            return false;
        }
    }
    for (std::size_t k = n + 1; k < series[n].size(); ++k)
        if (series[n][k] != 0) {
            why = "nonzero coefficient beyond degree n";
            return false;
        }
    return true;
}

void run_enum(Ctx& c, Shared&) {
    auto t0 = Clock::now();
    const int nmax = std::min(c.opt().enum_n, 7);
    EnumOptions eo;
    eo.allow_n8 = nmax >= 7;
    const char* fam_names[3] = {"outerplanar", "series-parallel", "planar"};
    Counts conn[3] = {outer_rooted_counts(nmax), sp_rooted_counts(nmax), planar_rooted_counts(nmax)};
    Counts two[3] = {outer_2conn_rooted_counts(nmax), sp_2conn_rooted_counts(nmax), planar_2conn_rooted_counts(nmax)};
    for (int n = 1; n <= nmax; ++n) {
        const auto& all = enumerate_all(n + 1, eo);
        for (int f = 0; f < 3; ++f) {
            std::string why;
            std::string tag = std::string(fam_names[f]) + ".n" + std::to_string(n);
            c.truth("enum.connected." + tag, rows_match(conn[f], n, all[f].at(Level::Connected), why), why);
            c.truth("enum.2conn." + tag, rows_match(two[f], n, all[f].at(Level::TwoConnected), why), why);
        }
    }
    // C'(x) itself for outerplanar: n! [x^n] C' = connected graphs on n+1 vertices
    QS cp = outer_cprime_series(nmax + 1);
    bool ok = true;
    Rational fact = 1;
    for (int n = 1; n <= nmax; ++n) {
        fact *= n;
        const auto& lc = enumerate_all(n + 1, eo)[0].at(Level::Connected);
        if (cp[n] * fact != Rational(BigInt(lc.count))) ok = false;
    }
    c.truth("enum.cprime.outerplanar", ok);
    // T•: n! t_{n,m,k} = k n #{3-connected planar on n vertices, m edges, deg(0) = k}
    TCoeffs tc = T_root_coefficients(nmax + 1);
    for (int n = 4; n <= nmax + 1; ++n) {
        const auto& lc = enumerate_all(n, eo)[2].at(Level::ThreeConnected);
        BigInt fact_n = 1;
        for (int i = 2; i <= n; ++i) fact_n *= i;
        bool good = true;
        std::string why;
        for (std::size_t m = 0; m < lc.by_edges_degree.size(); ++m)
            for (int k = 0; k < n; ++k) {
                auto it = tc.find({n, static_cast<int>(m), k});
                Rational t = it == tc.end() ? Rational(0) : it->second;
                Rational want(BigInt(k) * n * BigInt(lc.by_edges_degree[m][k]));
                if (t * Rational(fact_n) != want) {
                    good = false;
                    why = "m=" + std::to_string(m) + " k=" + std::to_string(k);
                }
            }
        for (const auto& [key, v] : tc)
            if (std::get<0>(key) == n && std::get<1>(key) >= static_cast<int>(lc.by_edges_degree.size()) && v != 0) {
                good = false;
                why = "coefficient beyond the edge range";
            }
        c.truth("enum.3conn.planar.n" + std::to_string(n), good, why);
    }
    // quadrangulation closed forms against the series iteration
    QuadOracle qo = quad_system_oracle(4, 4, 4);
    c.truth("enum.quad.Q", exactly_equal(qo.Q_closed, qo.Q_iter), "orders (4,4,4)");
    c.truth("enum.quad.w", exactly_equal(qo.w_closed, qo.w_iter), "orders (4,4,4)");
    c.truth("enum.quad.T", T_root_coefficients(7) == T_root_coefficients_via_quadratic(7), "x order 7");
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> ux(0.002, 0.03), uz(0.1, 0.8), uw(0.05, 1.0);
    Real worst_rs = 0, worst_quad = 0, worst_T = 0;
    auto rmax = [](const Real& a, const Real& b) { return a < b ? b : a; };
    for (int i = 0; i < 8; ++i) {
        Real x(ux(rng)), z(uz(rng)), w(uw(rng));
        auto rs = solve_RS(x * z, z);
        worst_rs = rmax(worst_rs, rmax(abs(rs[0] - x * z * square(rs[1] + 1)), abs(rs[1] - z * square(rs[0] + 1))));
        MapGfPoint p = Q_eval(x * z, z, w);
        worst_quad = rmax(worst_quad, abs(w_quadratic_residual(p)));
        worst_T = rmax(worst_T, abs(T_root(x, z, w) - T_root_via_Q(x, z, w)));
    }
    c.near("enum.numeric.RS", worst_rs, Real(0), 1e-20, "8 random points");
    c.near("enum.numeric.w-quadratic", worst_quad, Real(0), 1e-20, "8 random points");
    c.near("enum.numeric.T-vs-Q", worst_T, Real(0), 1e-20, "8 random points");
    double el = seconds_since(t0);
    c.truth("enum.runtime", el < 600, "seconds " + std::to_string(el) + " (budget 600)");
}

// ---- criterion 5 --------------------------------------------------------

void run_fits(Ctx& c, Shared&) {
    const double sig4 = 1e-4;
    Real s7 = sqrt(Real(7));
    Real r1 = (7 * s7 - 17) / 32, u0 = (s7 - 1) / 3;
    auto tf = T_fit(r1, Real(1));
    TSing<Real> tp = T_singular_coeffs(u0, Real(1), true);
    TSing<Real> tcor = T_singular_coeffs(u0, Real(1), false);
    c.rel("fits.T0", tp.T0, tf[0], sig4, "printed T0 vs fit of T•(r,z,1) near z = 1");
    c.rel("fits.T2", tp.T2, tf[2], sig4, "printed T2 vs fit");
    c.rel("fits.T3", tp.T3, tf[3], sig4, "printed T3 vs fit");
    c.report("fits.T3-corrected", tcor.T3, tf[3], std::abs(tf[3].convert_to<double>()) * sig4,
             "T3 with the P3 sign that matches the expansion");
    auto df = D_fit(Real(1), Real(1));
    DSing ds = D_singular_coeffs(Real(1), Real(1));
    c.rel("fits.D0", ds.D0, df[0], sig4, "printed D0 vs fit of D(x,1,1) near x = R(1)");
    c.rel("fits.D2", ds.D2, df[2], sig4, "printed D2 vs fit");
    c.rel("fits.D3", ds.D3, df[3], sig4, "printed D3 vs fit");
    BExpansion be = B_expansion(Real(1), 8);
    std::optional<Real> alpha;
    try {
        alpha = fit_alpha(Real(1));
        c.report("fits.alpha", *alpha, *alpha, 0, "alpha fitted so that printed B3(1,1) equals the structural value");
    } catch (const Error& e) {
        c.error("fits.alpha", e.what());
    }
    BSing bp = B_singular_printed(Real(1), Real(1), alpha.value_or(Real(1)));
    c.rel("fits.B0", bp.B0, be.B_at1[0], sig4, "printed B0 vs fit of B•(x,1,1) near x = R(1)");
    c.rel("fits.B2", bp.B2, be.B_at1[2], sig4, "printed B2 vs fit");
    c.rel("fits.B3", bp.B3, be.B_at1[3], sig4, "printed B3 (with fitted alpha) vs fit");
    // closed-form primitive of T•/t against quadrature
    Real x("0.03"), z("0.9"), w("0.7");
    Real ic = integral_T(x, z, w), in = integral_T_numeric(x, z, w);
    c.report("fits.integral-T", ic, in, std::abs(in.convert_to<double>()) * 1e-10, "printed primitive vs quadrature");
    c.report("fits.integral-T-at-0", integral_T(x, z, Real("1e-30")), Real(0), 1e-20, "printed primitive near w = 0");
}

// ---- criterion 6 --------------------------------------------------------

void run_density(Ctx& c, Shared& s) {
    const int K = 30;
    const char* cum[6] = {"0.0367284", "0.1993078", "0.4347438", "0.6215175", "0.7510198", "0.8372003"};
    Real kp = s.planar_kappa();
    DegreeDistribution dc = density_pgf(Level::Connected, kp, K);
    auto cu = dc.cumulative();
    for (int k = 1; k <= 6; ++k) c.near("density.cumulative.k" + std::to_string(k), cu[k], cum[k - 1], 1e-4);
    for (int k = 1; k <= 6; ++k) c.near("density.planar.d" + std::to_string(k), dc.d[k], kTable1[2][k - 1], 1e-4);
    Real mu2 = density_mu_at_one(Level::TwoConnected);
    c.near("density.mu.planar-2conn", mu2, "2.26", 1e-2);
    DegreeDistribution d2 = density_pgf(Level::TwoConnected, mu2, K);
    for (int k = 1; k <= 6; ++k) c.near("density.planar-2conn.d" + std::to_string(k), d2.d[k], kTable1[3][k - 1], 1e-4);
    Real mu3 = (7 + sqrt(Real(7))) / 4;
    c.near("density.mu.planar-3conn", density_mu_at_one(Level::ThreeConnected), mu3, 1e-8);
    DegreeDistribution d3 = density_pgf(Level::ThreeConnected, mu3, K);
    for (int k = 1; k <= 6; ++k) c.near("density.planar-3conn.d" + std::to_string(k), d3.d[k], kTable1[4][k - 1], 1e-4);
}

// ---- criterion 7 --------------------------------------------------------

QS random_series(std::mt19937& rng, int order, bool zero_constant) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    QS s("x", order);
    for (int i = 0; i <= order; ++i) s[i] = Rational(num(rng), den(rng));
    if (zero_constant) s[0] = 0;
    return s;
}

// Residual of an equation re-evaluated at twice the working precision.
template <class F>
Real residual_doubled(const Real& root, F&& f) {
    int d = working_digits();
    std::string text = fmt(root, d + 5);
    PrecisionScope ps(2 * d);
    Real r(text);
    Real v = f(r);
    return Real(fmt(abs(v), 20));
}

void run_properties(Ctx& c, Shared& s) {
    std::mt19937 rng(7);
    const int N = 10;
    bool comm = true, assoc = true, distr = true, explog = true, logexp = true, sqr = true, comp = true, inv_ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        QS a = random_series(rng, N, false), b = random_series(rng, N, false), d = random_series(rng, N, false);
        QS a0 = random_series(rng, N, true), b0 = random_series(rng, N, true);
        comm = comm && exactly_equal(a * b, b * a) && exactly_equal(a + b, b + a);
        assoc = assoc && exactly_equal((a * b) * d, a * (b * d));
        distr = distr && exactly_equal(a * (b + d), a * b + a * d);
        explog = explog && exactly_equal(log(exp(a0)), a0);
        logexp = logexp && exactly_equal(exp(log(a0 + 1L)), a0 + 1L);
        sqr = sqr && exactly_equal(sqrt(a0 + 1L) * sqrt(a0 + 1L), a0 + 1L);
        comp = comp && exactly_equal(compose(compose(a, a0), b0), compose(a, compose(a0, b0)));
        QS u = a0 + 1L;
        inv_ok = inv_ok && exactly_equal(u * inv(u), QS::constant("x", N, Rational(1)));
    }
    c.truth("properties.ring.commutative", comm);
    c.truth("properties.ring.associative", assoc);
    c.truth("properties.ring.distributive", distr);
    c.truth("properties.log-exp", explog);
    c.truth("properties.exp-log", logexp);
    c.truth("properties.sqrt-square", sqr);
    c.truth("properties.compose-associative", comp);
    c.truth("properties.inverse", inv_ok);
    // fixed point: T = x e^T has n! [x^n] T = n^(n-1)
    {
        QS x = QS::variable("x", 12);
        QS t = fixed_point([&](const QS& y) { return x * exp(y); }, QS("x", 12));
        bool ok = exactly_equal(t, x * exp(t));
        Rational fact = 1;
        for (int n = 1; n <= 12; ++n) {
            fact *= n;
            BigInt p = 1;
            for (int i = 1; i < n; ++i) p *= n;
            ok = ok && t[n] * fact == Rational(p);
        }
        c.truth("properties.fixed-point.tree", ok, "Cayley trees n^(n-1)");
        // C' from its own fixed point vs the row sums of the rooted pipeline
        QS cp = outer_cprime_series(11);
        auto rows = outer_rooted_counts(10);
        bool same = true;
        Rational f = 1;
        for (int n = 0; n <= 10; ++n) {
            if (n > 0) f *= n;
            BigInt sum = 0;
            for (auto& v : rows[n]) sum += v;
            same = same && cp[n] * f == Rational(sum);
        }
        c.truth("properties.fixed-point.outerplanar", same, "C' vs sum_k C_k through order 10");
    }
    // positivity of counting coefficients
    {
        bool pos = true;
        for (auto counts : {outer_rooted_counts(8), sp_rooted_counts(8), planar_rooted_counts(7),
                            planar_2conn_rooted_counts(7)})
            for (auto& row : counts)
                for (auto& v : row) pos = pos && v >= 0;
        for (const auto& [k, v] : T_root_coefficients(9)) pos = pos && v >= 0;
        c.truth("properties.positivity", pos, "rooted counts and T• coefficients");
    }
    // solver residuals at doubled precision
    {
        const Real bound = eps_digits(working_digits() - 12);
        const OuterConstants& oc = s.outer();
        c.near("properties.residual.outer-tau",
               residual_doubled(oc.tau, [](const Real& t) { return 1 - t * (dissection_derivative(t) + 1) / 2; }), Real(0),
               bound.convert_to<double>(), "tau B''(tau) = 1");
        Real xs("0.1");
        Real Es = solve_E_sp(xs, Real(1));
        c.near("properties.residual.sp-E",
               residual_doubled(Es, [&](const Real& E) {
                   Real x(fmt(xs, 10));
                   return log((1 + E) / 2) - x * E * E / (1 + x * E);
               }),
               Real(0), bound.convert_to<double>(), "E(0.1,1)");
        Real t0 = t_of_y(Real(1));
        c.near("properties.residual.planar-t0", residual_doubled(t0, [](const Real& t) { return y_of_t(t) - 1; }), Real(0),
               bound.convert_to<double>(), "y(t0) = 1");
        Real X("0.01"), Y("0.02");
        auto rs = solve_RS(X, Y);
        c.near("properties.residual.maps-RS", residual_doubled(rs[0], [&](const Real& R) {
                   Real S(fmt(rs[1], working_digits() / 2 + 5));
                   Real Xd(fmt(X, 5));
                   return R - Xd * (S + 1) * (S + 1);
               }),
               Real(0), eps_digits(working_digits() / 2).convert_to<double>(), "R = X (S+1)^2 (S rounded to half precision)");
    }
}

// ---- criterion 8 --------------------------------------------------------

void run_discrepancies(Ctx& c, Shared& s) {
    const SpConstants& sc = s.sp();
    c.mismatch("discrepancies.sp-q-conn", sp_q_conn_printed(sc), sc.q_conn, Real("0.7504161"), 1e-7,
               "statement exponent -1/(tau E) vs proof exponent -1/(1+tau E)");
    Real t0 = t_of_y(Real(1));
    c.mismatch("discrepancies.planar-q-2conn", q2_printed(t0), 1 / w3_of_y(Real(1)), Real("0.6734506"), 1e-7,
               "printed exp((t0-1)(t0+6)/(6t0^2+20t0+6)) vs D0(1,w3) = t0/(1-t0)");
    // auxiliary printed-formula reports
    c.report("discrepancies.sp-w0-direct", sp_w0_direct(sc), sc.w0, 1e-6, "Jacobian-vanishing w0 vs closed form");
    c.report("discrepancies.sp-w1-direct", sp_w1_direct(sc), sc.w1, 1e-6, "Jacobian-vanishing w1 vs closed form");
    auto rr = sp_printed_R_relations(Real(1));
    c.report("discrepancies.sp-R-closed-form", rr[0], sc.R1, 1e-6, "printed R(y) = (sqrt(1-1/E0)-1)/E0 vs Phi = Phi_z = 0");
    DegreeDistribution pp = pgf_outer_conn_printed(8);
    c.report("discrepancies.outer-p-printed-d1", pp.d[1], s.oconn().d[1], 1e-6, "explicit p(w) as displayed in the proof");
    c.report("discrepancies.planar-q2-t0-factor",
             1 / (exp(t0 * (t0 - 1) * (t0 + 6) / (6 * t0 * t0 + 20 * t0 + 6)) / (1 - t0) - 1), 1 / w3_of_y(Real(1)), 1e-7,
             "printed q formula with an extra factor t0 in the exponent numerator");
}

}  // namespace

const std::vector<std::string>& validation_sections() {
    static const std::vector<std::string> s = {"table1", "table2", "identities",   "enum",
                                               "fits",   "density", "properties", "discrepancies"};
    return s;
}

int section_criterion(const std::string& section) {
    const auto& s = validation_sections();
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == section) return static_cast<int>(i) + 1;
    throw UsageError("unknown validation section: " + section);
}

std::vector<CheckResult> run_validation(const ValidateOptions& opt, const CheckSink& sink) {
    for (const auto& name : opt.only) section_criterion(name);
    if (opt.kmax < 20) throw UsageError("validate: kmax >= 20 required for the tail fits");
    PrecisionScope ps(opt.digits);
    std::vector<CheckResult> out;
    Ctx c(opt, sink, out);
    Shared shared;
    shared.K = opt.kmax;
    using Runner = void (*)(Ctx&, Shared&);
    const Runner runners[8] = {run_table1, run_table2, run_identities, run_enum,
                               run_fits,   run_density, run_properties, run_discrepancies};
    for (std::size_t i = 0; i < validation_sections().size(); ++i) {
        const std::string& name = validation_sections()[i];
        if (!opt.only.empty() && !opt.only.count(name)) continue;
        c.begin(name);
        try {
            runners[i](c, shared);
        } catch (const std::exception& e) {
            c.error(name + ".aborted", e.what());
        }
    }
    return out;
}

std::string to_json_line(const CheckResult& r) {
    nlohmann::ordered_json j;
    j["criterion"] = r.criterion;
    j["section"] = r.section;
    j["name"] = r.name;
    j["status"] = r.status;
    j["value"] = r.value;
    j["expected"] = r.expected;
    j["tol"] = r.tol;
    j["detail"] = r.detail;
    j["seconds"] = r.seconds;
    return j.dump();
}

}  // namespace degdist
