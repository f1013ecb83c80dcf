#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gnt {

// Central-difference derivative of a vector-valued function at 0, extrapolated
// to step -> 0 with Neville's scheme in h^2.
struct Extrapolated {
    std::vector<double> value;
    // |best - second best| per component; the disagreement of the last two
    // tableau entries, not an assumed bound.
    std::vector<double> error;
    // Raw central differences, one row per step.
    std::vector<std::vector<double>> raw;
    // Per component: successive raw differences shrink (or sit at round-off).
    bool converged = true;
};

using VectorFunction = std::function<std::vector<double>(double)>;

Extrapolated central_difference(const VectorFunction& f, std::span<const double> steps);

// Halving schedule h0, h0/2, ... with `levels` entries.
std::vector<double> halving_steps(double h0, int levels);

}  // namespace gnt
