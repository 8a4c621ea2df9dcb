#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfe/config.hpp"

namespace sfe::acceptance {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    double seconds = 0;
    std::string detail;
};

/// Runs the acceptance battery (optionally only criteria whose name contains
/// the filter substring). Deterministic given the seed.
std::vector<CriterionResult> run_all(std::uint64_t seed = kDefaultSeed,
                                     const std::string& filter = "");

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace sfe::acceptance
