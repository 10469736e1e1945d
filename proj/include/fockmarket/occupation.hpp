#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace fockmarket {

// Quanta per mode; labels one Fock basis state.
using OccupationVector = std::vector<std::int64_t>;

struct OccupationHash {
  std::size_t operator()(const OccupationVector& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto q : v) {
      h ^= static_cast<std::size_t>(q) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// One hop term of a Hamiltonian reduced to the quanta it moves: applying the
// generator adds delta to every listed mode; the adjoint direction negates
// the deltas.
struct HopGenerator {
  std::vector<std::pair<std::size_t, std::int64_t>> deltas;
};

}  // namespace fockmarket
