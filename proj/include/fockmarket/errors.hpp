#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockmarket {

// Invalid user-supplied configuration or arguments.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Sector closure exceeded the configured dimension cap.
struct SectorOverflowError : std::runtime_error {
  SectorOverflowError(std::size_t bound_, std::size_t reached_)
      : std::runtime_error("sector closure exceeded the maximum dimension " +
                           std::to_string(bound_) + " (reached " + std::to_string(reached_) +
                           " states); raise the cap if the sector is genuinely this large"),
        bound(bound_),
        reached(reached_) {}
  std::size_t bound;
  std::size_t reached;
};

// Violated internal contract: inconsistent sector closure, dimension
// mismatch, non-Hermitian input where hermiticity is required, ...
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fockmarket
