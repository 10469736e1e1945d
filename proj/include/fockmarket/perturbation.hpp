#pragma once

#include <cstdint>
#include <vector>

#include "fockmarket/hamiltonians.hpp"
#include "fockmarket/sparse_operator.hpp"
#include "fockmarket/state.hpp"

namespace fockmarket {

inline constexpr int kMaxSeriesOrder = 12;

// Short-time expansion <X(t)> = sum_n coefficients[n] t^n with
// coefficients[n] = i^n <state| [H,[H,...,[H,X]]] |state> / n!  (n nested
// commutators). radius_hint = 1 / max|H entry| bounds where low orders are
// trustworthy; it is advisory only.
struct SeriesResult {
  std::vector<Complex> coefficients;
  double radius_hint = 0;

  Complex evaluate(double t) const;
  double evaluate_real(double t, double imag_tol = 1e-10) const;
};

// Nested-commutator expansion of X in the Heisenberg picture around t = 0.
// order may not exceed kMaxSeriesOrder. Entries whose magnitude falls below
// 1e-14 after each commutator are pruned (they are cancellation residue).
SeriesResult heisenberg_series(const SparseOperator& hamiltonian, const SparseOperator& observable,
                               const StateVector& state, int order);

// Transition amplitudes of the two-trader share-for-cash hop out of the
// state (n1, n2, k1, k2):
//   plus  = sqrt((n1+1) n2 k1!/(k1-M)! (k2+M)!/k2!)   (trader 1 buys)
//   minus = sqrt((n2+1) n1 (k1+M)!/k1! k2!/(k2-M)!)   (trader 2 buys)
// each zero when the annihilated cash side would go negative.
struct EpsilonPair {
  double plus = 0;
  double minus = 0;
};

EpsilonPair epsilon_pair(std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2,
                         std::int64_t M);

// Second-order two-trader observables:
//   n1(t) = n1 + t^2 p^2 (plus^2 - minus^2),      n2 by share conservation,
//   k_j(t) = k_j(0) - M (n_j(t) - n_j(0)),
//   Pi_j(t) = Pi_j(0) + (gamma - M)(n_j(t) - n_j(0)).
struct TwoTraderSecondOrder {
  double n1 = 0, k1 = 0, pi1 = 0;
  double n2 = 0, k2 = 0, pi2 = 0;
};

TwoTraderSecondOrder second_order_two_traders(const ModelTwoConfig& config, double t);

}  // namespace fockmarket
