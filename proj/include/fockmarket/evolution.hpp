#pragma once

#include <cstddef>
#include <vector>

#include "fockmarket/sparse_operator.hpp"
#include "fockmarket/state.hpp"

namespace fockmarket {

struct EvolveOptions {
  // Above this dimension the dense eigendecomposition is replaced by
  // Chebyshev-stepped sparse propagation (Gershgorin spectral enclosure,
  // Bessel coefficient tail truncated at coefficient_cutoff).
  std::size_t dense_threshold = 2048;
  double hermiticity_tol = 1e-10;
  double coefficient_cutoff = 1e-18;
};

// exp(-i H t) |initial> for every t in times. H must be Hermitian within
// options.hermiticity_tol (InternalError otherwise). Both evaluation paths
// preserve the state norm to 1e-12; times may be in any order.
std::vector<StateVector> evolve_exact(const SparseOperator& hamiltonian,
                                      const StateVector& initial,
                                      const std::vector<double>& times,
                                      const EvolveOptions& options = {});

}  // namespace fockmarket
