#pragma once

#include <cstdint>
#include <initializer_list>

#include "gnt/newton.hpp"

namespace gnt {

// SplitMix64. Used instead of <random> distributions so streams are
// identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent stream for (seed, k1, k2, ...): results do not depend on
    // the order in which trials are run.
    static Rng stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);

    std::uint64_t next();
    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)

private:
    std::uint64_t state_;
};

enum class Ensemble { general, symmetric };

// Tuple with entries uniform in [-1, 1]; symmetric ensemble symmetrises each
// matrix as (B + B^T) / 2.
EndoTuple random_tuple(Rng& rng, int q, int m, Ensemble ensemble);

// Random invertible matrix: I + 0.5 * uniform[-1,1] perturbation, redrawn
// until its 2-norm condition number is at most 10.
Matrix random_invertible(Rng& rng, int m);

}  // namespace gnt
