#include "fockmarket/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fockmarket/errors.hpp"

namespace fockmarket {

const std::vector<double>& TimeSeries::channel(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return values[i];
  }
  throw InternalError("time series has no channel named '" + std::string(name) + "'");
}

bool TimeSeries::has_channel(std::string_view name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

void TimeSeries::add_channel(std::string name, std::vector<double> vals) {
  if (vals.size() != times.size()) {
    throw InternalError("channel '" + name + "' does not match the time grid length");
  }
  names.push_back(std::move(name));
  values.push_back(std::move(vals));
}

std::vector<double> linspace(double t0, double t1, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {t0};
  std::vector<double> ts(points);
  const double step = (t1 - t0) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) ts[i] = t0 + step * static_cast<double>(i);
  ts.back() = t1;
  return ts;
}

OneBodyPropagator::OneBodyPropagator(const Eigen::MatrixXd& one_body) {
  if (one_body.rows() != one_body.cols()) throw ConfigError("one-body matrix must be square");
  if (!one_body.isApprox(one_body.transpose(), 1e-12)) {
    throw ConfigError("one-body matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(one_body);
  if (solver.info() != Eigen::Success) {
    throw InternalError("eigendecomposition of the one-body matrix failed");
  }
  vecs_ = solver.eigenvectors();
  vals_ = solver.eigenvalues();
}

Eigen::MatrixXcd OneBodyPropagator::at(double t) const {
  Eigen::VectorXcd phases(vals_.size());
  for (Eigen::Index i = 0; i < vals_.size(); ++i) {
    phases[i] = std::exp(Complex(0, -vals_[i] * t));
  }
  return vecs_.cast<Complex>() * phases.asDiagonal() * vecs_.transpose().cast<Complex>();
}

Eigen::VectorXd OneBodyPropagator::occupations(const Eigen::VectorXd& initial_n, double t) const {
  if (initial_n.size() != vals_.size()) {
    throw ConfigError("initial occupation length does not match the one-body matrix");
  }
  const Eigen::MatrixXcd w = at(t);
  return w.cwiseAbs2() * initial_n;
}

Eigen::MatrixXd one_body_matrix(const ModelOneConfig& config) {
  config.validate();
  Eigen::MatrixXd x = config.p;
  for (std::size_t l = 0; l < config.L(); ++l) {
    x(l, l) = config.alpha[l];
  }
  return x;
}

TimeSeries occupations_from_propagator(const OneBodyPropagator& propagator,
                                       const std::vector<double>& initial_n,
                                       const std::vector<double>& times) {
  if (initial_n.size() != propagator.size()) {
    throw ConfigError("initial occupation length does not match the propagator");
  }
  Eigen::VectorXd n0(initial_n.size());
  for (std::size_t i = 0; i < initial_n.size(); ++i) n0[static_cast<Eigen::Index>(i)] = initial_n[i];
  const double total0 = n0.sum();

  TimeSeries series;
  series.times = times;
  std::vector<std::vector<double>> vals(initial_n.size(), std::vector<double>(times.size()));
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    const Eigen::VectorXd nt = propagator.occupations(n0, times[ti]);
    if (std::abs(nt.sum() - total0) > 1e-10 * std::max(1.0, std::abs(total0))) {
      throw InternalError("one-body transport failed to conserve the total occupation");
    }
    for (std::size_t j = 0; j < initial_n.size(); ++j) {
      vals[j][ti] = nt[static_cast<Eigen::Index>(j)];
    }
  }
  for (std::size_t j = 0; j < initial_n.size(); ++j) {
    series.add_channel("n_" + std::to_string(j + 1), std::move(vals[j]));
  }
  return series;
}

TwoTraderPoint two_trader_closed_form(double alpha_diff, double p, double n1_0, double n2_0,
                                      double t) {
  const double omega_sq = alpha_diff * alpha_diff + 4 * p * p;
  if (omega_sq == 0.0) return {n1_0, n2_0};
  const double c = std::cos(std::sqrt(omega_sq) * t);
  TwoTraderPoint out;
  out.n1 = (n1_0 * (alpha_diff * alpha_diff + 2 * p * p * (1 + c)) +
            2 * p * p * n2_0 * (1 - c)) /
           omega_sq;
  out.n2 = (n2_0 * (alpha_diff * alpha_diff + 2 * p * p * (1 + c)) +
            2 * p * p * n1_0 * (1 - c)) /
           omega_sq;
  return out;
}

TimeSeries price_supply_solution(double supply_0, double price_0,
                                 const std::vector<double>& times) {
  if (supply_0 < 0 || price_0 < 0) throw ConfigError("supply and price must be non-negative");
  const double total = price_0 + supply_0;
  const double diff = price_0 - supply_0;
  TimeSeries series;
  series.times = times;
  std::vector<double> supply(times.size()), price(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    price[i] = 0.5 * (total + diff * std::cos(2 * times[i]));
    supply[i] = total - price[i];
  }
  series.add_channel("O_f", std::move(supply));
  series.add_channel("P_r", std::move(price));
  return series;
}

std::int64_t effective_price(double supply_0, double price_0) {
  if (supply_0 < 0 || price_0 < 0) throw ConfigError("supply and price must be non-negative");
  const double mean = 0.5 * (supply_0 + price_0);
  return static_cast<std::int64_t>(std::floor(mean + 0.5));
}

PortfolioSeries portfolio_series(double gamma_share, std::int64_t M, const TimeSeries& n_series,
                                 const std::vector<double>& initial_n,
                                 const std::vector<double>& initial_pi) {
  if (M < 1) throw ConfigError("the effective price M must be a positive integer");
  const std::size_t traders = initial_n.size();
  if (initial_pi.size() != traders || n_series.channel_count() != traders) {
    throw ConfigError("portfolio inputs must agree on the number of traders");
  }
  PortfolioSeries out;
  out.times = n_series.times;
  out.n.resize(traders);
  out.k.resize(traders);
  out.pi.resize(traders);
  for (std::size_t j = 0; j < traders; ++j) {
    const std::vector<double>& nj = n_series.values[j];
    const double k0 = initial_pi[j] - gamma_share * initial_n[j];
    out.n[j] = nj;
    out.k[j].resize(nj.size());
    out.pi[j].resize(nj.size());
    for (std::size_t ti = 0; ti < nj.size(); ++ti) {
      const double dn = nj[ti] - initial_n[j];
      out.k[j][ti] = k0 - static_cast<double>(M) * dn;
      out.pi[j][ti] = initial_pi[j] + (gamma_share - static_cast<double>(M)) * dn;
    }
  }
  return out;
}

double default_t_max(const Eigen::MatrixXd& one_body) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(one_body);
  const Eigen::VectorXd& vals = solver.eigenvalues();
  double omega = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    for (Eigen::Index j = i + 1; j < vals.size(); ++j) {
      const double gap = std::abs(vals[j] - vals[i]);
      if (gap > 1e-9 && (omega == 0 || gap < omega)) omega = gap;
    }
  }
  if (omega == 0) return 10.0;
  return 2 * (2 * M_PI / omega);
}

}  // namespace fockmarket
