#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fockmarket/occupation.hpp"

namespace fockmarket {

inline constexpr std::size_t kDefaultMaxSectorDim = 200000;

// Finite conserved subspace of Fock space: a lexicographically ordered list
// of occupation vectors with an index map, plus the hop generators the basis
// is closed under.
class FockSector {
 public:
  FockSector(std::size_t mode_count, std::vector<OccupationVector> basis,
             std::vector<HopGenerator> generators = {});

  std::size_t mode_count() const { return mode_count_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<OccupationVector>& basis() const { return basis_; }
  const OccupationVector& state(std::size_t index) const { return basis_[index]; }
  std::optional<std::size_t> index_of(const OccupationVector& state) const;
  const std::vector<HopGenerator>& generators() const { return generators_; }

 private:
  std::size_t mode_count_ = 0;
  std::vector<OccupationVector> basis_;
  std::vector<HopGenerator> generators_;
  std::unordered_map<OccupationVector, std::size_t, OccupationHash> index_;
};

// Breadth-first closure of `initial` under all generators applied in both
// directions, keeping only non-negative occupations. Throws
// SectorOverflowError once the closure exceeds max_dim.
FockSector enumerate_sector(const OccupationVector& initial,
                            const std::vector<HopGenerator>& generators,
                            std::size_t max_dim = kDefaultMaxSectorDim);

}  // namespace fockmarket
