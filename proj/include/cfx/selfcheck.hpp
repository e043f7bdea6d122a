#pragma once

#include <string>
#include <vector>

namespace cfx {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};

struct SelfcheckReport {
    std::vector<CriterionResult> criteria;
    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass) return false;
        return true;
    }
};

/// Runs the full acceptance suite.  `quick` shrinks the sample counts to a
/// sub-10-second smoke run; seeds make the randomized parts reproducible.
SelfcheckReport run_acceptance(bool quick, unsigned seed);

} // namespace cfx
