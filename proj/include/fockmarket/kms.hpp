#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

namespace fockmarket {

// Thermal-balance ratio n_a (1 + n_c) / (n_c (1 + n_a)) for real occupations
// n_a >= 0, n_c > 0; exceeds 1 exactly when n_a > n_c. n_c = 0 throws
// ConfigError (undefined denominator).
double kms_rhs(double n_a, double n_c);

// Nine-cell classification by the sign of Phi and the relation of the two
// occupations. Letters: a = n_a > n_c, b = n_a = n_c, c = n_a < n_c.
enum class KmsCase { ia, ib, ic, ii_with, ii_without, iiia, iiib, iiic };

enum class KmsOutcome {
  solution,        // a unique inverse temperature beta0 > 0 (or any beta for ii_with)
  beta_zero_only,  // balance holds only at beta = 0
  none,            // no admissible beta
};

struct KmsSolution {
  KmsCase case_label{};
  KmsOutcome outcome{};
  std::optional<double> beta0;  // unset for ii_with (any beta works) and for `none`
  std::optional<double> na0;
  std::optional<double> nc0;
  double residual = 0;  // |rhs - exp(beta0 * Phi)| when a pair was solved
};

// Equilibrium query: Phi and the per-trader budget Ql = n_a + n_c are always
// required. Supplying beta solves for the occupation split; supplying the
// occupations classifies them (and yields beta0 where one exists).
struct KmsProblem {
  double Phi = 0;
  double Ql = 0;
  std::optional<double> beta;
  std::optional<double> n_a;
  std::optional<double> n_c;

  void validate() const;
};

// Classification of supplied occupations against the nine-cell table.
KmsSolution classify_state(double Phi, double n_a, double n_c);

// Bisection for n_c in (0, Ql) with n_a = Ql - n_c such that
// kms_rhs = exp(beta * Phi); the map is strictly decreasing, so the root is
// unique. Residual tolerance 1e-12. Targets outside the attainable range of
// the bracket [delta, Ql - delta], delta = 1e-12 Ql, return the matching
// case label with no pair.
KmsSolution solve_pair(double Phi, double Ql, double beta);

// Dispatch on the supplied fields of `problem` (beta -> solve_pair,
// occupations -> classify_state).
KmsSolution solve_equilibrium(const KmsProblem& problem);

// Equilibrium portfolio Pi = Pi0 + (gamma - 1)(k0 - nc0) at unit price.
double equilibrium_portfolio(double gamma_share, double initial_k, double nc0, double initial_pi);

// The balance ratio must not depend on the trader: largest spread of
// kms_rhs over the supplied (n_a, n_c) pairs.
double rhs_spread(std::span<const std::pair<double, double>> occupations);

std::string to_string(KmsCase c);
std::string to_string(KmsOutcome o);

}  // namespace fockmarket
