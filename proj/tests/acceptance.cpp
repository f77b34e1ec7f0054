// Runs every validation section and prints one PASS/FAIL line per criterion.
// Individual checks go to stderr as JSON lines.

#include "degdist/validate.hpp"

#include <cstdio>
#include <iostream>
#include <map>

using namespace degdist;

int main(int argc, char** argv) {
    ValidateOptions opt;
    if (argc > 1) opt.digits = std::atoi(argv[1]);
    struct Tally {
        int total = 0, bad = 0;
        std::string first_bad;
    };
    std::map<int, Tally> tally;
    auto sink = [&](const CheckResult& r) {
        std::cerr << to_json_line(r) << std::endl;
        if (r.criterion <= 0) return;
        Tally& t = tally[r.criterion];
        ++t.total;
        if (!r.ok()) {
            if (t.bad++ == 0) t.first_bad = r.name + " = " + r.value + " (expected " + r.expected + ")";
        }
    };
    run_validation(opt, sink);
    int failed = 0;
    for (int c = 1; c <= 8; ++c) {
        const Tally& t = tally[c];
        bool pass = t.total > 0 && t.bad == 0;
        if (!pass) ++failed;
        std::printf("criterion %d: %s (%d/%d checks)", c, pass ? "PASS" : "FAIL", t.total - t.bad, t.total);
        if (!pass) std::printf("  first failure: %s", t.total ? t.first_bad.c_str() : "no checks ran");
        std::printf("\n");
    }
    return failed ? 1 : 0;
}
