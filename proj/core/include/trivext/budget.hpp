#pragma once

#include <cstdint>
#include <string>

namespace trivext {

/// Caps for exhaustive operations.  The element cap can be overridden with
/// the TRIVEXT_BUDGET environment variable.
struct Budget {
  std::uint64_t max_elements = 4096;       // idempotents, units, maximal ideals
  std::uint64_t max_ideal_ring = 512;      // all_ideals / Bezout / VNR scans
  std::uint64_t max_ideals = 20000;        // size of an ideal lattice walk
};

/// Process-wide default, read once from the environment.
const Budget& default_budget();

/// Throws ResourceError when `count` exceeds `cap`.
void require_within(std::uint64_t count, std::uint64_t cap, const std::string& what);

}  // namespace trivext
