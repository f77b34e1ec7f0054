#include "degdist/cache.hpp"

#include "degdist/errors.hpp"
#include "degdist/outerplanar.hpp"
#include "degdist/planar.hpp"
#include "degdist/seriesparallel.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace degdist {

ConstantsCache::ConstantsCache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string fam, name, value;
        int digits;
        if (!(ss >> fam >> name >> digits >> value)) throw DomainError("constants cache: malformed line: " + line);
        entries_[{fam, name, digits}] = value;
    }
}

std::string ConstantsCache::default_path() {
    if (const char* p = std::getenv("DEGDIST_CACHE")) return p;
    if (const char* x = std::getenv("XDG_CACHE_HOME")) return std::string(x) + "/degdist/constants.txt";
    if (const char* h = std::getenv("HOME")) return std::string(h) + "/.cache/degdist/constants.txt";
    return "";
}

bool ConstantsCache::lookup(const std::string& family, const std::string& name, int digits, std::string& value) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find({family, name, digits});
    if (it == entries_.end()) return false;
    value = it->second;
    return true;
}

void ConstantsCache::store(const std::string& family, const std::string& name, int digits, const std::string& value) {
    std::lock_guard<std::mutex> lock(mu_);
    entries_[{family, name, digits}] = value;
}

Real ConstantsCache::get(const std::string& family, const std::string& name, const std::function<Real()>& compute) {
    int digits = working_digits();
    std::string text;
    if (lookup(family, name, digits, text)) {
        ++hits_;
        return Real(text);
    }
    ++misses_;
    text = fmt(compute(), digits);
    store(family, name, digits, text);
    save();
    return Real(text);
}

void ConstantsCache::save() const {
    if (path_.empty()) return;
    std::lock_guard<std::mutex> lock(mu_);
    std::filesystem::path p(path_);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw DomainError("constants cache: cannot write " + tmp);
        out << "# family name digits value\n";
        for (const auto& [key, v] : entries_)
            out << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key) << ' ' << v << '\n';
    }
    std::filesystem::rename(tmp, p);
}

std::vector<NamedConstant> constants_report(ConstantsCache& cache, const std::string& family) {
    std::vector<NamedConstant> out;
    auto add = [&](const std::string& fam, const std::string& name, const std::string& prov, const std::string& sym,
                   const std::function<Real()>& f) {
        if (!family.empty() && fam != family) return;
        out.push_back({fam, name, prov, sym, cache.get(fam, name, f)});
    };

    std::optional<OuterConstants> oc;
    auto outer = [&]() -> const OuterConstants& {
        if (!oc) oc = constants_outer(SolverConfig::standard());
        return *oc;
    };
    const std::string o = "outerplanar";
    add(o, "tau", "solver", "", [&] { return outer().tau; });
    add(o, "rho", "solver", "", [&] { return outer().rho; });
    add(o, "radiusB", "closed-form", "3-2*sqrt(2)", [] { return 3 - 2 * sqrt(Real(2)); });
    add(o, "q", "solver", "2*D(tau)-tau", [&] { return outer().q; });
    add(o, "c1", "closed-form", "", [&] { return outer().c1; });
    add(o, "c2", "closed-form", "sqrt(2*tau/q)", [&] { return outer().c2; });
    add(o, "c1_fit", "fitted", "", [&] {
        DegreeDistribution d = pgf_outer_conn(64);
        return fit_outer_c1(d, 32, 64, outer().c2, 3).c1;
    });
    add(o, "q_2conn", "closed-form", "sqrt(2)-1", [] { return sqrt(Real(2)) - 1; });

    std::optional<SpConstants> sc;
    auto sp = [&]() -> const SpConstants& {
        if (!sc) sc = constants_sp(SolverConfig::standard());
        return *sc;
    };
    const std::string s = "series-parallel";
    add(s, "R1", "solver", "", [&] { return sp().R1; });
    add(s, "tau", "solver", "", [&] { return sp().tau; });
    add(s, "rho", "solver", "", [&] { return sp().rho; });
    add(s, "E0", "solver", "", [&] { return sp().E0; });
    add(s, "E1", "solver", "", [&] { return sp().E1; });
    add(s, "w0", "solver", "", [&] { return sp().w0; });
    add(s, "w1", "solver", "", [&] { return sp().w1; });
    add(s, "q_conn", "solver", "1/w1", [&] { return sp().q_conn; });
    add(s, "q_2conn", "solver", "1/w0", [&] { return sp().q_2conn; });
    add(s, "kappa", "solver", "", [&] { return sp().kappa; });
    add(s, "c_conn", "fitted", "", [] { return pgf_sp_conn(64).tail.c; });
    add(s, "c_2conn", "fitted", "", [] { return pgf_sp_2conn(64).tail.c; });

    std::optional<PlanarConstants> pc;
    auto pl = [&]() -> const PlanarConstants& {
        if (!pc) pc = constants_planar();
        return *pc;
    };
    const std::string p = "planar";
    add(p, "r1", "closed-form", "(7*sqrt(7)-17)/32", [] { return (7 * sqrt(Real(7)) - 17) / 32; });
    add(p, "u0", "closed-form", "(sqrt(7)-1)/3", [] { return (sqrt(Real(7)) - 1) / 3; });
    add(p, "t0", "solver", "", [] { return t_of_y(Real(1)); });
    add(p, "R1", "solver", "", [] { return R_of_y(Real(1)); });
    add(p, "E0", "solver", "", [] { return planar_critical(Real(1)).E0; });
    add(p, "rho", "solver", "", [] { return rho_of_y(Real(1)); });
    add(p, "q3", "closed-form", "sqrt(7)-2", [] { return sqrt(Real(7)) - 2; });
    add(p, "q2", "solver", "1/w3 with D0(1,w3)=t0/(1-t0)", [] { return 1 / w3_of_y(Real(1)); });
    add(p, "q1", "solver", "1/w3 at the branch point of T", [] { return 1 / w3_direct(Real(1)); });
    add(p, "alpha3", "closed-form", "(7+sqrt(7))/2", [] { return (7 + sqrt(Real(7))) / 2; });
    add(p, "kappa", "solver", "", [] { return density_mu_at_one(Level::Connected); });
    add(p, "mu_2conn", "solver", "", [] { return density_mu_at_one(Level::TwoConnected); });
    add(p, "mu_3conn", "closed-form", "(7+sqrt(7))/4", [] { return (7 + sqrt(Real(7))) / 4; });
    add(p, "c3", "fitted", "", [&] { return pl().c3; });
    add(p, "c2", "fitted", "", [&] { return pl().c2; });
    add(p, "c1", "fitted", "", [&] { return pl().c1; });
    return out;
}

}  // namespace degdist
