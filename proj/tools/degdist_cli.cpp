// degdist: degree distributions of random outerplanar, series-parallel and
// planar graphs.
//
// Exit status: 0 ok, 1 validation failure or computation error, 2 usage error.

#include "degdist/cache.hpp"
#include "degdist/distribution.hpp"
#include "degdist/errors.hpp"
#include "degdist/outerplanar.hpp"
#include "degdist/planar.hpp"
#include "degdist/seriesparallel.hpp"
#include "degdist/validate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

using namespace degdist;

namespace {

enum class Format { Csv, Json, Pretty };

struct RunConfig {
    std::string family = "planar";
    std::string level = "connected";
    int kmax = 6;
    int digits = 60;
    std::vector<std::string> mu;
    std::string grid;
    std::string format = "csv";
    std::string cache_path;
    bool no_cache = false;
    std::vector<std::string> only;
    int enum_n = 7;
    int validate_kmax = 64;
    std::vector<std::string> perturb;
};

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json" || s == "json-lines" || s == "jsonl") return Format::Json;
    if (s == "pretty" || s == "table") return Format::Pretty;
    throw UsageError("unknown format '" + s + "'");
}

// Decimal text at half the working precision.
std::string dec(const Real& x, int digits) { return fmt(x, std::max(8, digits / 2)); }

// Enough degrees for the tail fit on [K/2, K].
int fit_order(int kmax) { return std::max(kmax, 64); }

DegreeDistribution compute_distribution(Family fam, Level lev, int K, const std::optional<Real>& mu) {
    if (mu) {
        if (fam != Family::Planar) throw UsageError("--mu is only available for planar graphs");
        return density_pgf(lev, *mu, K);
    }
    switch (fam) {
        case Family::Outerplanar:
            if (lev == Level::Connected) return pgf_outer_conn(K);
            if (lev == Level::TwoConnected) return pgf_outer_2conn(K);
            break;
        case Family::SeriesParallel:
            if (lev == Level::Connected) return pgf_sp_conn(K);
            if (lev == Level::TwoConnected) return pgf_sp_2conn(K);
            break;
        case Family::Planar:
            if (lev == Level::Connected) return pgf_planar_conn(K);
            if (lev == Level::TwoConnected) return pgf_planar_2conn(K);
            return pgf_planar_3conn(K).d;
    }
    throw UsageError(level_name(lev) + " is not available for " + family_name(fam));
}

struct Row {
    std::string family, level, mu, k, dk, cum;
};

void print_rows(const std::vector<Row>& rows, Format f) {
    switch (f) {
        case Format::Csv:
            std::cout << "family,level,mu,k,d_k,cum\n";
            for (const auto& r : rows)
                std::cout << r.family << ',' << r.level << ',' << r.mu << ',' << r.k << ',' << r.dk << ',' << r.cum << '\n';
            break;
        case Format::Json:
            for (const auto& r : rows) {
                nlohmann::ordered_json j;
                j["family"] = r.family;
                j["level"] = r.level;
                j["mu"] = r.mu.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.mu);
                j["k"] = std::stoi(r.k);
                j["dk"] = r.dk;
                j["cum"] = r.cum;
                std::cout << j.dump() << '\n';
            }
            break;
        case Format::Pretty:
            std::cout << std::left << std::setw(16) << "family" << std::setw(11) << "level" << std::setw(12) << "mu"
                      << std::setw(5) << "k" << std::setw(36) << "d_k" << "cum\n";
            for (const auto& r : rows)
                std::cout << std::setw(16) << r.family << std::setw(11) << r.level << std::setw(12)
                          << (r.mu.empty() ? "-" : r.mu.substr(0, 10)) << std::setw(5) << r.k << std::setw(36) << r.dk
                          << r.cum << '\n';
            break;
    }
}

std::vector<Row> rows_of(const DegreeDistribution& d, int kmax, const std::string& mu, int digits) {
    std::vector<Row> rows;
    auto cu = d.cumulative();
    for (int k = 1; k <= kmax && k <= d.k_max(); ++k)
        rows.push_back({family_name(d.family), level_name(d.level), mu, std::to_string(k), dec(d.d[k], digits),
                        dec(cu[k], digits)});
    return rows;
}

void print_summary(const DegreeDistribution& d, Format f, int digits) {
    const TailModel& t = d.tail;
    Real checksum = d.total();
    switch (f) {
        case Format::Csv:
        case Format::Pretty:
            std::cout << "# tail: c=" << dec(t.c, digits) << " exponent=" << fmt(t.exponent, 6) << " q=" << dec(t.q, digits);
            if (t.c2 != 0) std::cout << " c2=" << dec(t.c2, digits);
            std::cout << "\n# checksum: " << dec(checksum, digits) << '\n';
            break;
        case Format::Json: {
            nlohmann::ordered_json j;
            j["tail"] = {{"c", dec(t.c, digits)}, {"exponent", fmt(t.exponent, 6)}, {"q", dec(t.q, digits)},
                         {"c2", dec(t.c2, digits)}};
            j["checksum"] = dec(checksum, digits);
            std::cout << j.dump() << '\n';
            break;
        }
    }
}

std::unique_ptr<ConstantsCache> open_cache(const RunConfig& cfg) {
    if (cfg.no_cache) return std::make_unique<ConstantsCache>("");
    return std::make_unique<ConstantsCache>(cfg.cache_path.empty() ? ConstantsCache::default_path() : cfg.cache_path);
}

int cmd_distribution(const RunConfig& cfg) {
    Format f = parse_format(cfg.format);
    Family fam = parse_family(cfg.family);
    Level lev = parse_level(cfg.level);
    if (cfg.mu.size() > 1) throw UsageError("distribution takes at most one --mu; use density for a grid");
    std::optional<Real> mu;
    if (!cfg.mu.empty()) mu = Real(cfg.mu[0]);
    DegreeDistribution d = compute_distribution(fam, lev, fit_order(cfg.kmax), mu);
    print_rows(rows_of(d, cfg.kmax, mu ? cfg.mu[0] : "", cfg.digits), f);
    print_summary(d, f, cfg.digits);
    return 0;
}

int cmd_constants(const RunConfig& cfg) {
    Format f = parse_format(cfg.format);
    auto cache = open_cache(cfg);
    std::string only = cfg.family == "all" ? "" : family_name(parse_family(cfg.family));
    for (const auto& c : constants_report(*cache, only)) {
        std::string v = dec(c.value, cfg.digits);
        switch (f) {
            case Format::Csv:
                std::cout << c.family << ',' << c.name << ',' << v << ',' << c.provenance << ',' << c.symbolic << '\n';
                break;
            case Format::Json: {
                nlohmann::ordered_json j;
                j["family"] = c.family;
                j["name"] = c.name;
                j["value"] = v;
                j["provenance"] = c.provenance;
                if (!c.symbolic.empty()) j["symbolic"] = c.symbolic;
                std::cout << j.dump() << '\n';
                break;
            }
            case Format::Pretty:
                std::cout << std::left << std::setw(16) << c.family << std::setw(10) << c.name << std::setw(36) << v
                          << std::setw(12) << c.provenance << c.symbolic << '\n';
                break;
        }
    }
    return 0;
}

std::vector<std::string> mu_values(const RunConfig& cfg) {
    std::vector<std::string> out = cfg.mu;
    if (!cfg.grid.empty()) {
        double lo, hi;
        int n;
        char c1, c2;
        std::istringstream ss(cfg.grid);
        if (!(ss >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || hi < lo)
            throw UsageError("--grid expects lo:hi:n");
        for (int i = 0; i < n; ++i) {
            double v = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", v);
            out.push_back(buf);
        }
    }
    if (out.empty()) throw UsageError("density needs --mu or --grid");
    return out;
}

int cmd_density(const RunConfig& cfg) {
    Format f = parse_format(cfg.format);
    if (parse_family(cfg.family) != Family::Planar) throw UsageError("density is only available for planar graphs");
    Level lev = parse_level(cfg.level);
    Real lo = lev == Level::ThreeConnected ? Real(3) / 2 : Real(1), hi = 3;
    std::vector<Row> rows;
    std::vector<std::string> flagged;
    for (const auto& m : mu_values(cfg)) {
        Real mu(m);
        if (!(mu > lo && mu < hi)) throw UsageError("mu " + m + " outside (" + fmt(lo, 3) + ", 3)");
        try {
            DegreeDistribution d = density_pgf(lev, mu, std::max(cfg.kmax, 30));
            auto r = rows_of(d, cfg.kmax, m, cfg.digits);
            rows.insert(rows.end(), r.begin(), r.end());
        } catch (const SaddleOutOfRange& e) {
            flagged.push_back(m + ": " + e.what());
        } catch (const NoConvergence& e) {
            flagged.push_back(m + ": " + e.what());
        }
    }
    print_rows(rows, f);
    Real marker = density_mu_at_one(lev);
    if (f == Format::Json) {
        nlohmann::ordered_json j;
        j["marker"] = dec(marker, cfg.digits);
        j["flagged"] = flagged;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "# marker: " << dec(marker, cfg.digits) << '\n';
        for (const auto& s : flagged) std::cout << "# flagged: " << s << '\n';
    }
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    ValidateOptions opt;
    opt.digits = cfg.digits;
    opt.kmax = cfg.validate_kmax;
    opt.enum_n = cfg.enum_n;
    opt.only.insert(cfg.only.begin(), cfg.only.end());
    for (const auto& p : cfg.perturb) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--perturb expects name=delta");
        opt.perturb[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
    }
    Format f = parse_format(cfg.format);
    bool failed = false;
    auto sink = [&](const CheckResult& r) {
        if (r.criterion > 0 && !r.ok()) failed = true;
        if (f == Format::Json || f == Format::Csv)
            std::cout << to_json_line(r) << std::endl;
        else
            std::cout << std::left << std::setw(18) << r.status << std::setw(3) << r.criterion << std::setw(48) << r.name
                      << r.value << "  (expected " << r.expected << ")" << std::endl;
    };
    run_validation(opt, sink);
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Degree distributions of random outerplanar, series-parallel and planar graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--precision", cfg.digits, "working precision in decimal digits")->check(CLI::Range(kMinDigits, kMaxDigits));
    app.add_option("--format", cfg.format, "csv | json-lines | pretty");
    app.add_option("--cache", cfg.cache_path, "constants cache file (default $DEGDIST_CACHE)");
    app.add_flag("--no-cache", cfg.no_cache, "do not read or write the constants cache");

    auto* dist = app.add_subcommand("distribution", "d_1..d_kmax with tail model and checksum");
    dist->add_option("--family", cfg.family, "outerplanar | series-parallel | planar");
    dist->add_option("--level", cfg.level, "connected | 2conn | 3conn");
    dist->add_option("--kmax", cfg.kmax)->check(CLI::PositiveNumber);
    dist->add_option("--mu", cfg.mu, "edge density (planar only)");

    auto* cons = app.add_subcommand("constants", "named analytic constants");
    cons->add_option("--family", cfg.family, "family or 'all'")->default_val("all");

    auto* dens = app.add_subcommand("density", "cumulative curves conditioned on edge density");
    dens->add_option("--family", cfg.family)->default_val("planar");
    dens->add_option("--level", cfg.level);
    dens->add_option("--kmax", cfg.kmax)->check(CLI::PositiveNumber);
    dens->add_option("--mu", cfg.mu, "one or more values");
    dens->add_option("--grid", cfg.grid, "lo:hi:n");

    auto* val = app.add_subcommand("validate", "acceptance checks as JSON lines");
    val->add_option("--only", cfg.only, "sections: table1 table2 identities enum fits density properties discrepancies");
    val->add_option("--n", cfg.enum_n, "largest row n for the enumeration checks")->check(CLI::Range(1, 7));
    val->add_option("--kmax", cfg.validate_kmax)->check(CLI::Range(20, 400));
    val->add_option("--perturb", cfg.perturb, "name=delta offsets on expected values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        // validate speaks JSON lines unless told otherwise
        if (val->parsed() && app.get_option("--format")->count() == 0) cfg.format = "json";
        PrecisionScope ps(cfg.digits);
        if (dist->parsed()) return cmd_distribution(cfg);
        if (cons->parsed()) return cmd_constants(cfg);
        if (dens->parsed()) return cmd_density(cfg);
        return cmd_validate(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
