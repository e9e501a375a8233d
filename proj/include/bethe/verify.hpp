#pragma once

#include "bethe/io.hpp"
#include "bethe/kernel.hpp"

#include <random>
#include <string>
#include <vector>

namespace bethe {

/// Rapidities spread along the real axis with random complex jitter; inhomogeneities random
/// unless homogeneous is set.
ChainSpec random_spec(int n_sites, int n_magnons, std::mt19937_64& rng, bool homogeneous = false,
                      cplx gamma = {0.7, 0.15});

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool counted = true; // informational entries do not affect the verdict
    std::string detail;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool pass() const;
    std::string text() const;
    std::string json() const;
};

/// Property battery for one chain. With `homogeneous` the equivalences that assume v_j = 0 are added.
VerifyReport run_verification(const RunConfig& config, bool homogeneous);

/// N = 6, M = 2 chain drawn from the seed.
RunConfig demo_config(std::uint64_t seed, bool homogeneous);

} // namespace bethe
