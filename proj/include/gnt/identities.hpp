#pragma once

#include <cstdint>
#include <vector>

#include "gnt/newton.hpp"
#include "gnt/report.hpp"

namespace gnt {

struct IdentitiesConfig {
    std::vector<int> q_values{1, 2, 3};
    std::vector<int> m_values{2, 3, 4, 5, 6};
    int trials = 200;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    double chain_rule_tolerance = 1e-7;
    ReadingChoice reading = ReadingChoice::both;
};

// Randomized algebra suite. Trial k of group (q, m) draws from the RNG stream
// (seed, q, m, k), alternating the general and symmetric ensembles. One record
// per identity and group, carrying the worst residual over the trials.
SuiteReport run_identities(const IdentitiesConfig& config);

}  // namespace gnt
