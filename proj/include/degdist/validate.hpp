#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace degdist {

// One verdict. criterion is 1..8 for acceptance checks and 0 for auxiliary
// reports (printed formulas that are known not to hold, fitted symbols).
struct CheckResult {
    int criterion = 0;
    std::string section;
    std::string name;
    std::string status;  // pass | fail | expected-mismatch | error
    std::string value;
    std::string expected;
    double tol = 0;
    std::string detail;
    double seconds = 0;

    bool ok() const { return status == "pass" || status == "expected-mismatch"; }
};

struct ValidateOptions {
    int digits = 60;
    int kmax = 64;
    int enum_n = 7;  // rows n <= enum_n; row 7 enumerates graphs on 8 vertices
    std::set<std::string> only;  // section names; empty runs everything
    // Offsets added to named expected values (harness self-test).
    std::map<std::string, double> perturb;
};

// table1 table2 identities enum fits density properties discrepancies
const std::vector<std::string>& validation_sections();
int section_criterion(const std::string& section);

using CheckSink = std::function<void(const CheckResult&)>;
std::vector<CheckResult> run_validation(const ValidateOptions& opt, const CheckSink& sink = {});

std::string to_json_line(const CheckResult& r);

}  // namespace degdist
