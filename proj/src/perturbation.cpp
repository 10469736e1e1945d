#include "fockmarket/perturbation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fockmarket/errors.hpp"
#include "fockmarket/state.hpp"

namespace fockmarket {

Complex SeriesResult::evaluate(double t) const {
  Complex acc(0, 0);
  for (std::size_t n = coefficients.size(); n-- > 0;) {
    acc = acc * t + coefficients[n];
  }
  return acc;
}

double SeriesResult::evaluate_real(double t, double imag_tol) const {
  const Complex v = evaluate(t);
  if (std::abs(v.imag()) > imag_tol * std::max(1.0, std::abs(v.real()))) {
    throw InternalError("series value expected to be real has imaginary part " +
                        std::to_string(v.imag()));
  }
  return v.real();
}

SeriesResult heisenberg_series(const SparseOperator& hamiltonian, const SparseOperator& observable,
                               const StateVector& state, int order) {
  if (order < 0) throw ConfigError("series order must be non-negative");
  if (order > kMaxSeriesOrder) {
    throw ConfigError("series order " + std::to_string(order) + " exceeds the supported limit " +
                      std::to_string(kMaxSeriesOrder));
  }
  if (hamiltonian.dim() != observable.dim()) {
    throw InternalError("heisenberg_series: operator dimensions differ");
  }

  SeriesResult result;
  result.radius_hint = hamiltonian.max_abs() > 0
                           ? 1.0 / hamiltonian.max_abs()
                           : std::numeric_limits<double>::infinity();
  result.coefficients.reserve(static_cast<std::size_t>(order) + 1);

  SparseOperator nested = observable;
  Complex phase(1, 0);       // i^n
  double factorial = 1.0;    // n!
  result.coefficients.push_back(expectation(state, nested));
  for (int n = 1; n <= order; ++n) {
    nested = commutator(hamiltonian, nested);
    nested.prune(1e-14);
    phase *= Complex(0, 1);
    factorial *= static_cast<double>(n);
    result.coefficients.push_back(phase * expectation(state, nested) / factorial);
  }
  return result;
}

EpsilonPair epsilon_pair(std::int64_t n1, std::int64_t n2, std::int64_t k1, std::int64_t k2,
                         std::int64_t M) {
  if (n1 < 0 || n2 < 0 || k1 < 0 || k2 < 0) {
    throw ConfigError("occupations must be non-negative");
  }
  if (M < 0) throw ConfigError("the effective price M must be non-negative");
  EpsilonPair out;
  if (k1 - M >= 0) {
    out.plus = std::sqrt(static_cast<double>((n1 + 1) * n2) * factorial_ratio_falling(k1, M) *
                         factorial_ratio_rising(k2, M));
  }
  if (k2 - M >= 0) {
    out.minus = std::sqrt(static_cast<double>((n2 + 1) * n1) * factorial_ratio_rising(k1, M) *
                          factorial_ratio_falling(k2, M));
  }
  return out;
}

TwoTraderSecondOrder second_order_two_traders(const ModelTwoConfig& config, double t) {
  config.validate();
  if (config.L() != 2) throw ConfigError("the second-order closed form covers two traders");
  const auto eps = epsilon_pair(config.initial_n[0], config.initial_n[1], config.initial_k[0],
                                config.initial_k[1], config.price_M);
  const double p = config.p(0, 1);
  const double shift = t * t * p * p * (eps.plus * eps.plus - eps.minus * eps.minus);
  const double M = static_cast<double>(config.price_M);
  const double gamma = config.gamma_share;

  TwoTraderSecondOrder out;
  out.n1 = static_cast<double>(config.initial_n[0]) + shift;
  out.n2 = static_cast<double>(config.initial_n[1]) - shift;
  out.k1 = static_cast<double>(config.initial_k[0]) - M * shift;
  out.k2 = static_cast<double>(config.initial_k[1]) + M * shift;
  const double pi1_0 = gamma * static_cast<double>(config.initial_n[0]) +
                       static_cast<double>(config.initial_k[0]);
  const double pi2_0 = gamma * static_cast<double>(config.initial_n[1]) +
                       static_cast<double>(config.initial_k[1]);
  out.pi1 = pi1_0 + (gamma - M) * shift;
  out.pi2 = pi2_0 - (gamma - M) * shift;
  return out;
}

}  // namespace fockmarket
