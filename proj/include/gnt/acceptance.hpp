#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnt/report.hpp"

namespace gnt {

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckRecord> checks;
    Json details = Json::object();
    double seconds = 0;
    double budget_seconds = 0;  // 0: no runtime budget

    // Every non-informational check passes; the runtime budget is judged
    // separately since timings are not reproducible.
    bool checks_passed() const;
    bool within_budget() const { return budget_seconds <= 0 || seconds <= budget_seconds; }
};

struct AcceptanceConfig {
    std::uint64_t seed = 42;
    int trials = 200;
};

// Criteria 1..8 in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config);

// |analytic - fd| against max(rel * max(|analytic|, |fd|), abs).
CheckRecord agreement_record(std::string name, std::string anchor, double analytic, double fd, double rel = 1e-6,
                             double abs = 1e-8);

}  // namespace gnt
