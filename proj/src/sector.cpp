#include "fockmarket/sector.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "fockmarket/errors.hpp"

namespace fockmarket {

FockSector::FockSector(std::size_t mode_count, std::vector<OccupationVector> basis,
                       std::vector<HopGenerator> generators)
    : mode_count_(mode_count), basis_(std::move(basis)), generators_(std::move(generators)) {
  for (const auto& state : basis_) {
    if (state.size() != mode_count_) {
      throw InternalError("sector basis state has " + std::to_string(state.size()) +
                          " modes, expected " + std::to_string(mode_count_));
    }
    for (auto q : state) {
      if (q < 0) throw InternalError("sector basis state with negative occupation");
    }
  }
  std::sort(basis_.begin(), basis_.end());
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (!index_.emplace(basis_[i], i).second) {
      throw InternalError("sector basis contains duplicate states");
    }
  }
}

std::optional<std::size_t> FockSector::index_of(const OccupationVector& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FockSector enumerate_sector(const OccupationVector& initial,
                            const std::vector<HopGenerator>& generators, std::size_t max_dim) {
  for (auto q : initial) {
    if (q < 0) throw ConfigError("initial occupation has a negative entry");
  }
  const std::size_t modes = initial.size();
  for (const auto& gen : generators) {
    for (const auto& [mode, delta] : gen.deltas) {
      (void)delta;
      if (mode >= modes) throw ConfigError("hop generator touches mode beyond the mode count");
    }
  }

  std::unordered_map<OccupationVector, std::size_t, OccupationHash> seen;
  std::deque<OccupationVector> queue;
  seen.emplace(initial, 0);
  queue.push_back(initial);

  while (!queue.empty()) {
    OccupationVector state = std::move(queue.front());
    queue.pop_front();
    for (const auto& gen : generators) {
      for (int direction : {+1, -1}) {
        OccupationVector next = state;
        bool valid = true;
        for (const auto& [mode, delta] : gen.deltas) {
          next[mode] += direction * delta;
          if (next[mode] < 0) {
            valid = false;
            break;
          }
        }
        if (!valid || seen.count(next)) continue;
        if (seen.size() >= max_dim) throw SectorOverflowError(max_dim, seen.size() + 1);
        seen.emplace(next, seen.size());
        queue.push_back(next);
      }
    }
  }

  std::vector<OccupationVector> basis;
  basis.reserve(seen.size());
  for (const auto& [state, idx] : seen) {
    (void)idx;
    basis.push_back(state);
  }
  return FockSector(modes, std::move(basis), generators);
}

}  // namespace fockmarket
