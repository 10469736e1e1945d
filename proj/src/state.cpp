#include "fockmarket/state.hpp"

#include <cmath>
#include <string>

#include "fockmarket/errors.hpp"

namespace fockmarket {

StateVector basis_state(const FockSector& sector, const OccupationVector& occupation) {
  auto idx = sector.index_of(occupation);
  if (!idx) throw ConfigError("requested basis state is not part of the sector");
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(sector.dim()));
  v[static_cast<Eigen::Index>(*idx)] = Complex(1, 0);
  return v;
}

Complex expectation(const StateVector& state, const SparseOperator& op) {
  if (static_cast<std::size_t>(state.size()) != op.dim()) {
    throw InternalError("expectation: state length does not match operator dimension");
  }
  return state.dot(op.apply(state));  // dot conjugates the left argument
}

double real_expectation(const StateVector& state, const SparseOperator& op, double imag_tol) {
  const Complex val = expectation(state, op);
  if (std::abs(val.imag()) > imag_tol) {
    throw InternalError("expectation expected to be real has imaginary part " +
                        std::to_string(val.imag()));
  }
  return val.real();
}

}  // namespace fockmarket
