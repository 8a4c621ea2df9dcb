#pragma once

#include <cstdint>

namespace sfe {

// Default numerical tolerance for state invariants and equality checks.
inline constexpr double kDefaultTol = 1e-9;

// Probabilities below this count as zero: branches are dropped, support
// membership is denied.
inline constexpr double kProbCutoff = 1e-12;

// Seed used by all randomized batteries unless overridden.
inline constexpr std::uint64_t kDefaultSeed = 20250811;

// Desk-scale guards.
inline constexpr long kMaxStateDim = 1L << 12;       // total Hilbert dimension
inline constexpr long kMaxSupport = 1L << 24;        // joint-distribution support
inline constexpr long kMaxFunctionCells = 1L << 20;  // |X| * |Y|

} // namespace sfe
