#include "fockmarket/meanfield.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "fockmarket/errors.hpp"

namespace fockmarket {

namespace {

bool is_resonant(double phi, double nu) {
  return std::abs(phi - nu) <= 1e-12 * std::max({1.0, std::abs(phi), std::abs(nu)});
}

void check_trader_index(std::size_t count, std::size_t l) {
  if (l >= count) {
    throw ConfigError("trader index " + std::to_string(l) + " outside the listed " +
                      std::to_string(count) + " traders");
  }
}

}  // namespace

double MeanFieldParams::eta_value() const {
  if (eta) return *eta;
  if (traders.empty()) throw ConfigError("eta needs a value or at least one trader to average");
  double sum = 0;
  for (const auto& tr : traders) sum += tr.n;
  return sum / static_cast<double>(traders.size());
}

double MeanFieldParams::qbar_value() const {
  if (Qbar) return *Qbar;
  if (traders.empty()) throw ConfigError("Qbar needs a value or at least one trader to average");
  double sum = 0;
  for (const auto& tr : traders) sum += tr.Q();
  return sum / static_cast<double>(traders.size());
}

void MeanFieldParams::validate() const {
  if (!std::isfinite(Phi)) throw ConfigError("Phi must be finite");
  if (!std::isfinite(X0.real()) || !std::isfinite(X0.imag())) {
    throw ConfigError("X0 must be finite");
  }
  for (const auto& tr : traders) {
    if (!(tr.n >= 0) || !(tr.k >= 0)) {
      throw ConfigError("trader occupations must be non-negative reals");
    }
  }
  if (traders.empty() && (!eta || !Qbar)) {
    throw ConfigError("either list traders or supply eta and Qbar explicitly");
  }
  (void)eta_value();
  (void)qbar_value();
  if (!std::isfinite(gamma_share)) throw ConfigError("share weight must be finite");
}

double meanfield_omega(const MeanFieldParams& params) {
  const double d = params.Phi - params.nu();
  return std::sqrt(d * d + 16.0 * std::norm(params.X0));
}

double nl_closed_form(const MeanFieldParams& params, std::size_t l, double t) {
  params.validate();
  check_trader_index(params.traders.size(), l);
  const double nu = params.nu();
  if (is_resonant(params.Phi, nu)) {
    throw ConfigError("Phi equals nu; this is the resonant case, use nl_resonant");
  }
  const double d = params.Phi - nu;
  const double x2 = std::norm(params.X0);
  const double w2 = d * d + 16.0 * x2;
  const double c = std::cos(std::sqrt(w2) * t);
  const double nl = params.traders[l].n;
  const double kl = params.traders[l].k;
  return (nl * d * d - 8.0 * x2 * (kl * (c - 1) - nl * (c + 1))) / w2;
}

double nl_resonant(const MeanFieldParams& params, std::size_t l, double t) {
  params.validate();
  check_trader_index(params.traders.size(), l);
  if (!is_resonant(params.Phi, params.nu())) {
    throw ConfigError("nl_resonant requires Phi = nu; use nl_closed_form off resonance");
  }
  const double nl = params.traders[l].n;
  if (params.X0 == Complex(0, 0)) return nl;  // no oscillation left
  const double w = 4.0 * std::abs(params.X0);
  const double ql = params.traders[l].Q();
  const Complex xl0 = params.traders[l].X0l.value_or(Complex(0, 0));
  const double b = -4.0 * std::imag(std::conj(params.X0) * xl0) / w;
  return ql / 2 + (nl - ql / 2) * std::cos(w * t) + b * std::sin(w * t);
}

std::vector<double> theta_system(const MeanFieldParams& params, std::size_t l,
                                 const std::vector<double>& times) {
  params.validate();
  check_trader_index(params.traders.size(), l);
  const double nu = params.nu();
  const double nl = params.traders[l].n;
  if (is_resonant(params.Phi, nu)) {
    if (params.X0 != Complex(0, 0)) {
      throw ConfigError("Phi equals nu; the theta change of variable is singular, use nl_resonant");
    }
    return std::vector<double>(times.size(), nl);
  }

  const double d = params.Phi - nu;
  const Complex x = params.X0;
  Eigen::Matrix3cd delta;
  delta << Complex(d, 0), 4.0 * x, Complex(0, 0),
      2.0 * std::conj(x), Complex(0, 0), -2.0 * x,
      Complex(0, 0), -4.0 * std::conj(x), Complex(-d, 0);

  const double w = std::sqrt(d * d + 16.0 * std::norm(x));
  // spectral projectors for the eigenvalue triple {0, +w, -w}
  const Eigen::Matrix3cd delta2 = delta * delta;
  const Eigen::Matrix3cd p_zero = Eigen::Matrix3cd::Identity() - delta2 / (w * w);
  const Eigen::Matrix3cd p_plus = (delta2 + w * delta) / (2 * w * w);
  const Eigen::Matrix3cd p_minus = (delta2 - w * delta) / (2 * w * w);

  const double ql = params.traders[l].Q();
  const Complex z0 = params.traders[l].X0l.value_or(Complex(0, 0)) - (2.0 / d) * x * ql;
  Eigen::Vector3cd theta0;
  theta0 << z0, Complex(nl, 0), std::conj(z0);

  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const Complex ep = std::exp(Complex(0, w * times[i]));
    const Eigen::Vector3cd theta =
        p_zero * theta0 + ep * (p_plus * theta0) + std::conj(ep) * (p_minus * theta0);
    const Complex n = theta[1];
    if (std::abs(n.imag()) > 1e-9 * std::max(1.0, std::abs(n.real()))) {
      throw InternalError("occupation component of the theta system is not real");
    }
    out[i] = n.real();
  }
  return out;
}

void Appendix2Params::validate() const {
  if (PhiTilde == 0.0 || !std::isfinite(PhiTilde)) {
    throw ConfigError("PhiTilde must be nonzero and finite");
  }
  const double m = mu_value();
  if (std::abs(2 * m + PhiTilde) > 1e-12 * std::max(1.0, std::abs(PhiTilde))) {
    throw ConfigError("the constraint 2 mu + PhiTilde = 0 must hold");
  }
  if (!std::isfinite(X0.real()) || !std::isfinite(X0.imag())) {
    throw ConfigError("X0 must be finite");
  }
  if (traders.empty()) throw ConfigError("at least one trader is required");
  for (const auto& tr : traders) {
    if (!std::isfinite(tr.gamma)) throw ConfigError("trader couplings must be finite");
    if (!(tr.n >= 0) || !(tr.k >= 0)) {
      throw ConfigError("trader occupations must be non-negative reals");
    }
  }
  if (!std::isfinite(gamma_share)) throw ConfigError("share weight must be finite");
}

double appendix2_omega(const Appendix2Params& params, std::size_t l) {
  params.validate();
  check_trader_index(params.traders.size(), l);
  const double d = params.traders[l].gamma + params.PhiTilde;
  const double m = params.mu_value();
  const double c = 64.0 * m * m / (params.PhiTilde * params.PhiTilde);
  return std::sqrt(d * d + c * std::norm(params.X0));
}

double nl_appendix2(const Appendix2Params& params, std::size_t l, double t) {
  params.validate();
  check_trader_index(params.traders.size(), l);
  const double d = params.traders[l].gamma + params.PhiTilde;
  const double m = params.mu_value();
  const double c = 64.0 * m * m / (params.PhiTilde * params.PhiTilde);
  const double x2 = std::norm(params.X0);
  const double w2 = d * d + c * x2;
  const double nl = params.traders[l].n;
  const double kl = params.traders[l].k;
  if (w2 == 0.0) return nl;  // no coupling and no detuning left
  const double cw = std::cos(std::sqrt(w2) * t);
  return (nl * d * d - (c / 2) * x2 * (kl * (cw - 1) - nl * (cw + 1))) / w2;
}

std::vector<double> portfolio_meanfield(double gamma_share, const std::vector<double>& n_values,
                                        double initial_n, double initial_pi) {
  std::vector<double> pi(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    pi[i] = initial_pi + (gamma_share - 1.0) * (n_values[i] - initial_n);
  }
  return pi;
}

double occupation_range_excess(double value, double Ql) {
  return std::max({0.0, -value, value - Ql});
}

}  // namespace fockmarket
