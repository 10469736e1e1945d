#pragma once

#include <Eigen/Dense>

#include "fockmarket/sector.hpp"
#include "fockmarket/sparse_operator.hpp"

namespace fockmarket {

using StateVector = Eigen::VectorXcd;

// Unit basis vector for `occupation`; throws ConfigError when the state is
// not part of the sector.
StateVector basis_state(const FockSector& sector, const OccupationVector& occupation);

// <state| op |state>. Throws InternalError on dimension mismatch.
Complex expectation(const StateVector& state, const SparseOperator& op);

// Expectation value that must be real: throws InternalError when the
// imaginary part exceeds imag_tol, otherwise returns the real part.
double real_expectation(const StateVector& state, const SparseOperator& op,
                        double imag_tol = 1e-10);

}  // namespace fockmarket
