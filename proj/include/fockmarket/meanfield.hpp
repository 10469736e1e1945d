#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "fockmarket/sparse_operator.hpp"

namespace fockmarket {

// One trader in the infinite-trader limit: real occupations n (shares) and
// k (cash), optional initial share-cash coherence X0l (needed only on the
// resonant branch).
struct MeanFieldTrader {
  double n = 0;
  double k = 0;
  std::optional<Complex> X0l;

  double Q() const { return n + k; }
};

// Central quantities of the infinite-trader market: mean coupling Phi, mean
// coherence X0, mean occupation eta and mean budget Qbar (both default to
// the averages over the listed traders). The drift frequency
// nu = Phi + 4 eta - 2 Qbar is always derived, never stored.
struct MeanFieldParams {
  double Phi = 0;
  Complex X0{0, 0};
  std::vector<MeanFieldTrader> traders;
  std::optional<double> eta;
  std::optional<double> Qbar;
  double gamma_share = 1.0;  // share weight in portfolio values

  double eta_value() const;
  double qbar_value() const;
  double nu() const { return Phi + 4 * eta_value() - 2 * qbar_value(); }
  void validate() const;
};

// omega = sqrt((Phi - nu)^2 + 16 |X0|^2) of the off-resonant oscillation.
double meanfield_omega(const MeanFieldParams& params);

// Off-resonant closed form (Phi != nu):
//   n_l(t) = [n_l (Phi-nu)^2 - 8|X0|^2 (k_l (cos wt - 1) - n_l (cos wt + 1))] / w^2.
// Phi = nu throws ConfigError directing to nl_resonant.
double nl_closed_form(const MeanFieldParams& params, std::size_t l, double t);

// Resonant branch (Phi = nu): w = 4|X0|,
//   n_l(t) = Q_l/2 + (n_l - Q_l/2) cos wt + B sin wt,
//   B = (2i/w)(conj(X0) X0l - X0 conj(X0l)), real by construction.
// X0 = 0 degenerates to the constant solution.
double nl_resonant(const MeanFieldParams& params, std::size_t l, double t);

// Integrates the closed linear system for (Z_l, n_l, Z_l^dag) with
// eigenfrequencies {0, +w, -w} and returns the occupation component; agrees
// with nl_closed_form on number states. Off-resonant only; Phi = nu with
// X0 = 0 returns the constant solution, with X0 != 0 throws ConfigError.
std::vector<double> theta_system(const MeanFieldParams& params, std::size_t l,
                                 const std::vector<double>& times);

// Trader with its own coupling gamma in the refined infinite-trader limit.
struct Appendix2Trader {
  double gamma = 0;
  double n = 0;
  double k = 0;

  double Q() const { return n + k; }
};

// Refined limit with per-trader couplings: mean coupling PhiTilde (nonzero),
// mu = 2 eta - Qbar constrained by 2 mu + PhiTilde = 0, mean coherence X0.
struct Appendix2Params {
  double PhiTilde = 0;
  std::optional<double> mu;  // defaults to -PhiTilde / 2
  Complex X0{0, 0};
  std::vector<Appendix2Trader> traders;
  double gamma_share = 1.0;

  double mu_value() const { return mu.value_or(-PhiTilde / 2); }
  void validate() const;
};

// Per-trader closed form of the refined limit:
//   w_l = sqrt((gamma_l + PhiTilde)^2 + (64 mu^2 / PhiTilde^2) |X0|^2),
//   n_l(t) = [n_l (gamma_l+PhiTilde)^2
//             - (32 mu^2 / PhiTilde^2)|X0|^2 (k_l (cos w_l t - 1) - n_l (cos w_l t + 1))] / w_l^2.
double nl_appendix2(const Appendix2Params& params, std::size_t l, double t);

double appendix2_omega(const Appendix2Params& params, std::size_t l);

// Unit-price portfolio: Pi_l(t) = Pi_l(0) + (gamma_share - 1)(n_l(t) - n_l(0)).
std::vector<double> portfolio_meanfield(double gamma_share, const std::vector<double>& n_values,
                                        double initial_n, double initial_pi);

// How far `value` exceeds the physical band [0, Ql]; 0 when inside. The
// closed forms do not guarantee positivity, so violations are reported, not
// clamped.
double occupation_range_excess(double value, double Ql);

}  // namespace fockmarket
