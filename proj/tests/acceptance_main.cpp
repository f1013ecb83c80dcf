#include <cstdio>
#include <cstdlib>
#include <string>

#include "gnt/acceptance.hpp"

// One line per acceptance criterion; exit status 1 if any fails its checks or
// its runtime budget.
int main(int argc, char** argv) {
    gnt::AcceptanceConfig config;
    if (argc > 1) config.seed = std::strtoull(argv[1], nullptr, 10);
    bool all = true;
    for (const auto& c : gnt::run_acceptance(config)) {
        double worst = 0;
        std::string worst_name;
        for (const auto& k : c.checks)
            if (!k.informational && k.tolerance > 0 && k.residual / k.tolerance >= worst) {
                worst = k.residual / k.tolerance;
                worst_name = k.name;
            }
        const bool ok = c.checks_passed() && c.within_budget();
        all = all && ok;
        std::printf("criterion %d %-28s %s  checks=%zu  worst residual/tolerance=%.3g (%s)  time=%.2fs", c.id,
                    c.title.c_str(), ok ? "PASS" : "FAIL", c.checks.size(), worst, worst_name.c_str(), c.seconds);
        if (c.budget_seconds > 0) std::printf(" budget=%.0fs", c.budget_seconds);
        std::printf("\n");
        for (const auto& k : c.checks)
            if (!k.informational && !k.pass)
                std::printf("    failed: %s residual=%.3g tolerance=%.3g\n", k.name.c_str(), k.residual, k.tolerance);
    }
    std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}
