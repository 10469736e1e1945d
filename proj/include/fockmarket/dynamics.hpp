#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fockmarket/hamiltonians.hpp"

namespace fockmarket {

// Time grid plus named real-valued channels sampled on it.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[channel][time index]

  std::size_t channel_count() const { return names.size(); }
  const std::vector<double>& channel(std::string_view name) const;
  bool has_channel(std::string_view name) const;
  void add_channel(std::string name, std::vector<double> vals);
};

std::vector<double> linspace(double t0, double t1, std::size_t points);

// One-particle evolution matrix W(t) = V exp(-i x t) V^T of a real symmetric
// one-body matrix X; occupation transport n_j(t) = sum_l |W_jl(t)|^2 n_l(0).
class OneBodyPropagator {
 public:
  explicit OneBodyPropagator(const Eigen::MatrixXd& one_body);

  std::size_t size() const { return static_cast<std::size_t>(vals_.size()); }
  const Eigen::VectorXd& frequencies() const { return vals_; }
  Eigen::MatrixXcd at(double t) const;
  Eigen::VectorXd occupations(const Eigen::VectorXd& initial_n, double t) const;

 private:
  Eigen::MatrixXd vecs_;
  Eigen::VectorXd vals_;
};

// X = diag(alpha) + p.
Eigen::MatrixXd one_body_matrix(const ModelOneConfig& config);

// Channels n_1..n_L transported by the propagator; total occupation is
// checked to stay within 1e-10 of its initial value.
TimeSeries occupations_from_propagator(const OneBodyPropagator& propagator,
                                       const std::vector<double>& initial_n,
                                       const std::vector<double>& times);

struct TwoTraderPoint {
  double n1 = 0;
  double n2 = 0;
};

// Closed-form two-trader occupations: Omega^2 = alpha_diff^2 + 4 p^2,
// n1(t) = [n1 (alpha_diff^2 + 2p^2(1+cos Omega t)) + 2p^2 n2 (1-cos Omega t)] / Omega^2,
// n2 by exchange symmetry; Omega = 0 degenerates to constants.
TwoTraderPoint two_trader_closed_form(double alpha_diff, double p, double n1_0, double n2_0,
                                      double t);

// Supply/price oscillation: P_r(t) = ((P_r0+O_f0) + (P_r0-O_f0) cos 2t)/2 and
// O_f(t) the complement keeping O_f + P_r exactly constant.
// Channels "O_f", "P_r".
TimeSeries price_supply_solution(double supply_0, double price_0, const std::vector<double>& times);

// Nearest integer (ties up) to the temporal mean (price_0 + supply_0)/2.
std::int64_t effective_price(double supply_0, double price_0);

// Portfolio values Pi_j(t) = Pi_j(0) + (gamma - M)(n_j(t) - n_j(0)) and cash
// k_j(t) = k_j(0) - M (n_j(t) - n_j(0)), with k_j(0) = Pi_j(0) - gamma n_j(0).
struct PortfolioSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> n;   // [trader][time]
  std::vector<std::vector<double>> k;
  std::vector<std::vector<double>> pi;
};

PortfolioSeries portfolio_series(double gamma_share, std::int64_t M, const TimeSeries& n_series,
                                 const std::vector<double>& initial_n,
                                 const std::vector<double>& initial_pi);

// Default horizon 2 * (2 pi / Omega) from the smallest positive eigenvalue
// gap of the one-body matrix; 10 when every gap vanishes.
double default_t_max(const Eigen::MatrixXd& one_body);

}  // namespace fockmarket
