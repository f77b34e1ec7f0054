#pragma once

#include "degdist/real.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

namespace degdist {

// Text file of analytic constants, one "family name digits value" line each.
// An empty path disables persistence.
class ConstantsCache {
public:
    explicit ConstantsCache(std::string path = "");

    // $DEGDIST_CACHE, else $XDG_CACHE_HOME/degdist/constants.txt, else
    // ~/.cache/degdist/constants.txt.
    static std::string default_path();

    const std::string& path() const { return path_; }
    bool lookup(const std::string& family, const std::string& name, int digits, std::string& value) const;
    void store(const std::string& family, const std::string& name, int digits, const std::string& value);
    // Cached value if present, otherwise compute, store and save. The value
    // always goes through its decimal form so that hits and misses agree.
    Real get(const std::string& family, const std::string& name, const std::function<Real()>& compute);
    void save() const;
    int hits() const { return hits_; }
    int misses() const { return misses_; }

private:
    std::string path_;
    mutable std::mutex mu_;
    std::map<std::tuple<std::string, std::string, int>, std::string> entries_;
    int hits_ = 0, misses_ = 0;
};

struct NamedConstant {
    std::string family;
    std::string name;
    std::string provenance;  // closed-form | solver | fitted
    std::string symbolic;    // exact form when there is one
    Real value;
};

// All named constants, or those of one family (family_name spelling).
std::vector<NamedConstant> constants_report(ConstantsCache& cache, const std::string& family = "");

}  // namespace degdist
