#pragma once

#include <cstdint>

namespace partalg {

// Numerical knobs shared by every module.  All comparisons of computed
// quantities go through these; individual checks never hardcode their own
// epsilon.
struct Config {
    double tol = 1e-9;        // relative tolerance for rank/membership decisions
    double gap_tol = 1e-6;    // eigenvalue clustering gap
    std::uint64_t seed = 0;   // PRNG seed for randomized steps (deterministic)
};

} // namespace partalg
