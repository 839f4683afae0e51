#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace scaling_lab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;     // measured numbers vs. targets
    double seconds = 0.0;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool quick = false;
    bool all_passed() const;
};

// Runs the full verification suite, streaming one PASS/FAIL line per
// criterion to `progress`.  quick mode trims trial counts to finish in
// about a minute; the full suite is the release gate.
AcceptanceReport run_acceptance(bool quick, std::ostream& progress);

nlohmann::json acceptance_json(const AcceptanceReport& report);

}  // namespace scaling_lab
