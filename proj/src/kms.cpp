#include "fockmarket/kms.hpp"

#include <algorithm>
#include <cmath>

#include "fockmarket/errors.hpp"

namespace fockmarket {

namespace {

bool nearly_equal_occupations(double n_a, double n_c) {
  return std::abs(n_a - n_c) <= 1e-12 * std::max(1.0, n_a + n_c);
}

KmsSolution labelled(KmsCase c, KmsOutcome o) {
  KmsSolution s;
  s.case_label = c;
  s.outcome = o;
  return s;
}

}  // namespace

double kms_rhs(double n_a, double n_c) {
  if (!(n_a >= 0) || !std::isfinite(n_a)) {
    throw ConfigError("n_a must be a finite non-negative occupation");
  }
  if (!(n_c > 0) || !std::isfinite(n_c)) {
    throw ConfigError("n_c must be a finite positive occupation (the ratio is undefined at 0)");
  }
  return n_a * (1 + n_c) / (n_c * (1 + n_a));
}

KmsSolution classify_state(double Phi, double n_a, double n_c) {
  const double rhs = kms_rhs(n_a, n_c);
  const bool equal = nearly_equal_occupations(n_a, n_c);

  KmsSolution s;
  if (Phi > 0) {
    if (equal) {
      s = labelled(KmsCase::ib, KmsOutcome::beta_zero_only);
      s.beta0 = 0.0;
    } else if (n_a > n_c) {
      s = labelled(KmsCase::ia, KmsOutcome::solution);
      s.beta0 = std::log(rhs) / Phi;
    } else {
      s = labelled(KmsCase::ic, KmsOutcome::none);
    }
  } else if (Phi == 0) {
    if (equal) {
      s = labelled(KmsCase::ii_with, KmsOutcome::solution);  // every beta balances
    } else {
      s = labelled(KmsCase::ii_without, KmsOutcome::none);
    }
  } else {
    if (equal) {
      s = labelled(KmsCase::iiib, KmsOutcome::beta_zero_only);
      s.beta0 = 0.0;
    } else if (n_a > n_c) {
      s = labelled(KmsCase::iiia, KmsOutcome::none);
    } else {
      s = labelled(KmsCase::iiic, KmsOutcome::solution);
      s.beta0 = std::log(rhs) / Phi;
    }
  }
  s.na0 = n_a;
  s.nc0 = n_c;
  if (s.outcome == KmsOutcome::solution) {
    s.residual = std::abs(rhs - std::exp(s.beta0.value_or(0.0) * Phi));
  } else if (s.outcome == KmsOutcome::beta_zero_only) {
    s.residual = std::abs(rhs - 1.0);
  }
  return s;
}

KmsSolution solve_pair(double Phi, double Ql, double beta) {
  if (!(Ql > 0) || !std::isfinite(Ql)) {
    throw ConfigError("the occupation budget Ql must be finite and positive");
  }
  if (!(beta >= 0) || !std::isfinite(beta)) {
    throw ConfigError("beta must be finite and non-negative");
  }
  if (!std::isfinite(Phi)) throw ConfigError("Phi must be finite");

  const double target = beta * Phi;  // log of the balance ratio at the root
  const double delta = 1e-12 * Ql;
  const auto log_ratio = [&](double nc) { return std::log(kms_rhs(Ql - nc, nc)); };

  const double hi_val = log_ratio(delta);
  const double lo_val = log_ratio(Ql - delta);
  if (target > hi_val || target < lo_val) {
    // The root sits closer to an endpoint than the working precision; report
    // the regime without a numeric pair.
    KmsSolution s;
    if (Phi > 0) {
      s = labelled(target > 0 ? KmsCase::ia : KmsCase::ic,
                   target > 0 ? KmsOutcome::solution : KmsOutcome::none);
    } else {
      s = labelled(target < 0 ? KmsCase::iiic : KmsCase::iiia,
                   target < 0 ? KmsOutcome::solution : KmsOutcome::none);
    }
    if (s.outcome == KmsOutcome::solution) s.beta0 = beta;
    return s;
  }

  double lo = delta;       // log_ratio(lo) >= target
  double hi = Ql - delta;  // log_ratio(hi) <= target
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (log_ratio(mid) >= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  const double nc0 = 0.5 * (lo + hi);
  const double na0 = Ql - nc0;
  const double rhs = kms_rhs(na0, nc0);
  const double residual = std::abs(rhs - std::exp(target));
  if (residual > 1e-12 * std::max(1.0, std::exp(target))) {
    throw InternalError("occupation-split bisection missed the residual tolerance");
  }

  KmsSolution s;
  const bool equal = nearly_equal_occupations(na0, nc0);
  if (Phi > 0) {
    if (equal) {
      s = labelled(KmsCase::ib, KmsOutcome::beta_zero_only);
      s.beta0 = 0.0;
    } else {
      s = labelled(na0 > nc0 ? KmsCase::ia : KmsCase::ic,
                   na0 > nc0 ? KmsOutcome::solution : KmsOutcome::none);
      if (s.outcome == KmsOutcome::solution) s.beta0 = beta;
    }
  } else if (Phi == 0) {
    s = labelled(equal ? KmsCase::ii_with : KmsCase::ii_without,
                 equal ? KmsOutcome::solution : KmsOutcome::none);
  } else {
    if (equal) {
      s = labelled(KmsCase::iiib, KmsOutcome::beta_zero_only);
      s.beta0 = 0.0;
    } else {
      s = labelled(na0 > nc0 ? KmsCase::iiia : KmsCase::iiic,
                   na0 > nc0 ? KmsOutcome::none : KmsOutcome::solution);
      if (s.outcome == KmsOutcome::solution) s.beta0 = beta;
    }
  }
  s.na0 = na0;
  s.nc0 = nc0;
  s.residual = residual;
  return s;
}

void KmsProblem::validate() const {
  if (!std::isfinite(Phi)) throw ConfigError("Phi must be finite");
  if (!(Ql > 0) || !std::isfinite(Ql)) {
    throw ConfigError("the occupation budget Ql must be finite and positive");
  }
  const bool has_pair = n_a.has_value() && n_c.has_value();
  if (n_a.has_value() != n_c.has_value()) {
    throw ConfigError("supply both occupations n_a and n_c or neither");
  }
  if (beta && has_pair) {
    throw ConfigError("supply either beta or the occupations, not both");
  }
  if (!beta && !has_pair) {
    throw ConfigError("supply beta (to solve for occupations) or n_a and n_c (to classify)");
  }
  if (beta && (!(*beta >= 0) || !std::isfinite(*beta))) {
    throw ConfigError("beta must be finite and non-negative");
  }
  if (has_pair) {
    if (std::abs(*n_a + *n_c - Ql) > 1e-9 * std::max(1.0, Ql)) {
      throw ConfigError("the supplied occupations must add up to Ql");
    }
  }
}

KmsSolution solve_equilibrium(const KmsProblem& problem) {
  problem.validate();
  if (problem.beta) return solve_pair(problem.Phi, problem.Ql, *problem.beta);
  return classify_state(problem.Phi, *problem.n_a, *problem.n_c);
}

double equilibrium_portfolio(double gamma_share, double initial_k, double nc0,
                             double initial_pi) {
  return initial_pi + (gamma_share - 1.0) * (initial_k - nc0);
}

double rhs_spread(std::span<const std::pair<double, double>> occupations) {
  if (occupations.empty()) return 0.0;
  double lo = kms_rhs(occupations[0].first, occupations[0].second);
  double hi = lo;
  for (const auto& [na, nc] : occupations.subspan(1)) {
    const double r = kms_rhs(na, nc);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi - lo;
}

std::string to_string(KmsCase c) {
  switch (c) {
    case KmsCase::ia: return "ia";
    case KmsCase::ib: return "ib";
    case KmsCase::ic: return "ic";
    case KmsCase::ii_with: return "ii-with";
    case KmsCase::ii_without: return "ii-without";
    case KmsCase::iiia: return "iiia";
    case KmsCase::iiib: return "iiib";
    case KmsCase::iiic: return "iiic";
  }
  return "?";
}

std::string to_string(KmsOutcome o) {
  switch (o) {
    case KmsOutcome::solution: return "solution";
    case KmsOutcome::beta_zero_only: return "beta-zero-only";
    case KmsOutcome::none: return "none";
  }
  return "?";
}

}  // namespace fockmarket
