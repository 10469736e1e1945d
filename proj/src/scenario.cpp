#include "fockmarket/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "fockmarket/csv.hpp"
#include "fockmarket/errors.hpp"
#include "fockmarket/evolution.hpp"
#include "fockmarket/operators.hpp"
#include "fockmarket/perturbation.hpp"
#include "fockmarket/state.hpp"
#include "fockmarket/svg.hpp"

namespace fockmarket {

using nlohmann::json;

namespace {

// ============================ JSON helpers =================================

const json& require_key(const json& j, const char* key, const char* ctx) {
  if (!j.is_object()) throw ConfigError(std::string(ctx) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw ConfigError(std::string(ctx) + " requires key \"" + key + "\"");
  }
  return *it;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* ctx) {
  if (!j.is_object()) throw ConfigError(std::string(ctx) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigError("unknown key \"" + key + "\" in " + ctx);
    }
  }
}

double as_double(const json& v, const char* what) {
  if (!v.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return v.get<double>();
}

std::int64_t as_int(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
  return v.get<std::int64_t>();
}

std::vector<double> as_double_vector(const json& v, const char* what) {
  if (!v.is_array()) throw ConfigError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_double(e, what));
  return out;
}

std::vector<std::int64_t> as_int_vector(const json& v, const char* what) {
  if (!v.is_array()) throw ConfigError(std::string(what) + " must be an array of integers");
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_int(e, what));
  return out;
}

Eigen::MatrixXd as_matrix(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(std::string(what) + " must be a non-empty array of rows");
  }
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = as_double_vector(v[r], what);
    if (row.size() != cols) throw ConfigError(std::string(what) + " rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
    }
  }
  return m;
}

Complex as_complex(const json& v, const char* what) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  throw ConfigError(std::string(what) + " must be a number or a [re, im] pair");
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

// ============================ model parsing ================================

ModelKind model_from_string(const std::string& s) {
  if (s == "model1") return ModelKind::Model1;
  if (s == "model2") return ModelKind::Model2;
  if (s == "meanfield") return ModelKind::MeanField;
  if (s == "meanfield-appendix2") return ModelKind::MeanFieldAppendix2;
  if (s == "kms") return ModelKind::Kms;
  throw ConfigError("unknown model \"" + s +
                    "\" (expected model1, model2, meanfield, meanfield-appendix2 or kms)");
}

std::string model_to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Model1: return "model1";
    case ModelKind::Model2: return "model2";
    case ModelKind::MeanField: return "meanfield";
    case ModelKind::MeanFieldAppendix2: return "meanfield-appendix2";
    case ModelKind::Kms: return "kms";
  }
  return "?";
}

ModelOneConfig parse_model1(const json& c) {
  reject_unknown_keys(c, {"alpha", "p", "initial_n", "price_M", "epsilon"}, "model1 config");
  ModelOneConfig cfg;
  cfg.alpha = as_double_vector(require_key(c, "alpha", "model1 config"), "alpha");
  cfg.p = as_matrix(require_key(c, "p", "model1 config"), "p");
  cfg.initial_n = as_int_vector(require_key(c, "initial_n", "model1 config"), "initial_n");
  if (c.contains("price_M")) cfg.price_M = as_int(c.at("price_M"), "price_M");
  if (c.contains("epsilon")) cfg.epsilon = as_double(c.at("epsilon"), "epsilon");
  cfg.validate();
  return cfg;
}

ModelTwoConfig parse_model2(const json& c) {
  reject_unknown_keys(c,
                      {"alpha", "beta", "p", "price_M", "initial_n", "initial_k", "initial_O",
                       "initial_Mp", "gamma_share"},
                      "model2 config");
  ModelTwoConfig cfg;
  cfg.alpha = as_double_vector(require_key(c, "alpha", "model2 config"), "alpha");
  cfg.beta = as_double_vector(require_key(c, "beta", "model2 config"), "beta");
  cfg.p = as_matrix(require_key(c, "p", "model2 config"), "p");
  cfg.initial_n = as_int_vector(require_key(c, "initial_n", "model2 config"), "initial_n");
  cfg.initial_k = as_int_vector(require_key(c, "initial_k", "model2 config"), "initial_k");
  if (c.contains("price_M")) cfg.price_M = as_int(c.at("price_M"), "price_M");
  if (c.contains("initial_O")) cfg.initial_O = as_int(c.at("initial_O"), "initial_O");
  if (c.contains("initial_Mp")) cfg.initial_Mp = as_int(c.at("initial_Mp"), "initial_Mp");
  if (c.contains("gamma_share")) cfg.gamma_share = as_double(c.at("gamma_share"), "gamma_share");
  cfg.validate();
  return cfg;
}

MeanFieldParams parse_meanfield(const json& c) {
  reject_unknown_keys(c, {"Phi", "X0", "eta", "Qbar", "traders", "gamma_share"},
                      "meanfield config");
  MeanFieldParams params;
  params.Phi = as_double(require_key(c, "Phi", "meanfield config"), "Phi");
  if (c.contains("X0")) params.X0 = as_complex(c.at("X0"), "X0");
  if (c.contains("eta")) params.eta = as_double(c.at("eta"), "eta");
  if (c.contains("Qbar")) params.Qbar = as_double(c.at("Qbar"), "Qbar");
  if (c.contains("gamma_share")) params.gamma_share = as_double(c.at("gamma_share"), "gamma_share");
  const json& traders = require_key(c, "traders", "meanfield config");
  if (!traders.is_array()) throw ConfigError("traders must be an array");
  for (const auto& t : traders) {
    reject_unknown_keys(t, {"n", "k", "X0l"}, "meanfield trader");
    MeanFieldTrader tr;
    tr.n = as_double(require_key(t, "n", "meanfield trader"), "trader n");
    tr.k = as_double(require_key(t, "k", "meanfield trader"), "trader k");
    if (t.contains("X0l")) tr.X0l = as_complex(t.at("X0l"), "trader X0l");
    params.traders.push_back(tr);
  }
  params.validate();
  return params;
}

Appendix2Params parse_appendix2(const json& c) {
  reject_unknown_keys(c, {"PhiTilde", "mu", "X0", "traders", "gamma_share"},
                      "meanfield-appendix2 config");
  Appendix2Params params;
  params.PhiTilde = as_double(require_key(c, "PhiTilde", "meanfield-appendix2 config"), "PhiTilde");
  if (c.contains("mu")) params.mu = as_double(c.at("mu"), "mu");
  if (c.contains("X0")) params.X0 = as_complex(c.at("X0"), "X0");
  if (c.contains("gamma_share")) params.gamma_share = as_double(c.at("gamma_share"), "gamma_share");
  const json& traders = require_key(c, "traders", "meanfield-appendix2 config");
  if (!traders.is_array()) throw ConfigError("traders must be an array");
  for (const auto& t : traders) {
    reject_unknown_keys(t, {"gamma", "n", "k"}, "meanfield-appendix2 trader");
    Appendix2Trader tr;
    tr.gamma = as_double(require_key(t, "gamma", "meanfield-appendix2 trader"), "trader gamma");
    tr.n = as_double(require_key(t, "n", "meanfield-appendix2 trader"), "trader n");
    tr.k = as_double(require_key(t, "k", "meanfield-appendix2 trader"), "trader k");
    params.traders.push_back(tr);
  }
  params.validate();
  return params;
}

KmsProblem parse_kms(const json& c) {
  reject_unknown_keys(c, {"Phi", "Ql", "beta", "n_a", "n_c"}, "kms config");
  KmsProblem problem;
  problem.Phi = as_double(require_key(c, "Phi", "kms config"), "Phi");
  problem.Ql = as_double(require_key(c, "Ql", "kms config"), "Ql");
  if (c.contains("beta")) problem.beta = as_double(c.at("beta"), "beta");
  if (c.contains("n_a")) problem.n_a = as_double(c.at("n_a"), "n_a");
  if (c.contains("n_c")) problem.n_c = as_double(c.at("n_c"), "n_c");
  problem.validate();
  return problem;
}

json model1_to_json(const ModelOneConfig& cfg) {
  json c;
  c["alpha"] = cfg.alpha;
  c["p"] = matrix_to_json(cfg.p);
  c["initial_n"] = cfg.initial_n;
  c["price_M"] = cfg.price_M;
  c["epsilon"] = cfg.epsilon;
  return c;
}

json model2_to_json(const ModelTwoConfig& cfg) {
  json c;
  c["alpha"] = cfg.alpha;
  c["beta"] = cfg.beta;
  c["p"] = matrix_to_json(cfg.p);
  c["price_M"] = cfg.price_M;
  c["initial_n"] = cfg.initial_n;
  c["initial_k"] = cfg.initial_k;
  c["initial_O"] = cfg.initial_O;
  c["initial_Mp"] = cfg.initial_Mp;
  c["gamma_share"] = cfg.gamma_share;
  return c;
}

json meanfield_to_json(const MeanFieldParams& params) {
  json c;
  c["Phi"] = params.Phi;
  c["X0"] = complex_to_json(params.X0);
  if (params.eta) c["eta"] = *params.eta;
  if (params.Qbar) c["Qbar"] = *params.Qbar;
  c["gamma_share"] = params.gamma_share;
  json traders = json::array();
  for (const auto& tr : params.traders) {
    json t;
    t["n"] = tr.n;
    t["k"] = tr.k;
    if (tr.X0l) t["X0l"] = complex_to_json(*tr.X0l);
    traders.push_back(std::move(t));
  }
  c["traders"] = std::move(traders);
  return c;
}

json appendix2_to_json(const Appendix2Params& params) {
  json c;
  c["PhiTilde"] = params.PhiTilde;
  if (params.mu) c["mu"] = *params.mu;
  c["X0"] = complex_to_json(params.X0);
  c["gamma_share"] = params.gamma_share;
  json traders = json::array();
  for (const auto& tr : params.traders) {
    json t;
    t["gamma"] = tr.gamma;
    t["n"] = tr.n;
    t["k"] = tr.k;
    traders.push_back(std::move(t));
  }
  c["traders"] = std::move(traders);
  return c;
}

json kms_to_json(const KmsProblem& problem) {
  json c;
  c["Phi"] = problem.Phi;
  c["Ql"] = problem.Ql;
  if (problem.beta) c["beta"] = *problem.beta;
  if (problem.n_a) c["n_a"] = *problem.n_a;
  if (problem.n_c) c["n_c"] = *problem.n_c;
  return c;
}

// ============================ run helpers ==================================

std::string indexed(const char* prefix, std::size_t i) {
  return std::string(prefix) + std::to_string(i + 1);
}

ConservationEntry drift_entry(std::string name, const std::vector<double>& vals) {
  ConservationEntry e;
  e.name = std::move(name);
  e.initial = vals.empty() ? 0.0 : vals.front();
  for (double v : vals) e.max_drift = std::max(e.max_drift, std::abs(v - e.initial));
  e.pass = e.max_drift <= kConservationTol;
  return e;
}

std::vector<double> grid_times(const Scenario& scenario, double fallback_t_max) {
  if (scenario.time) return linspace(0.0, scenario.time->t_max, scenario.time->points);
  return linspace(0.0, fallback_t_max, 201);
}

OccupationVector model1_initial(const ModelOneConfig& cfg) {
  OccupationVector occ(cfg.initial_n.begin(), cfg.initial_n.end());
  occ.push_back(cfg.price_M);
  return occ;
}

OccupationVector model2_initial(const ModelTwoConfig& cfg) {
  OccupationVector occ(cfg.initial_n.begin(), cfg.initial_n.end());
  occ.insert(occ.end(), cfg.initial_k.begin(), cfg.initial_k.end());
  occ.push_back(cfg.initial_O);
  occ.push_back(cfg.initial_Mp);
  return occ;
}

// Expectation values of `ops` along an exact evolution, one channel per
// operator in order.
std::vector<std::vector<double>> expectation_channels(const std::vector<StateVector>& states,
                                                      const std::vector<SparseOperator>& ops) {
  std::vector<std::vector<double>> out(ops.size());
  for (auto& ch : out) ch.reserve(states.size());
  for (const auto& psi : states) {
    for (std::size_t o = 0; o < ops.size(); ++o) {
      out[o].push_back(real_expectation(psi, ops[o]));
    }
  }
  return out;
}

struct EngineOutput {
  TimeSeries series;
  ConservationReport report;
  double radius_hint = 0;
};

EngineOutput run_model1(const ModelOneConfig& cfg, const Scenario& scenario,
                        const RunOptions& options) {
  cfg.validate();
  const Eigen::MatrixXd one_body = one_body_matrix(cfg);
  const std::vector<double> times = grid_times(scenario, default_t_max(one_body));
  const std::size_t L = cfg.L();

  EngineOutput out;
  RunMethod method = options.method == RunMethod::Auto ? RunMethod::OneBody : options.method;

  if (method == RunMethod::OneBody) {
    OneBodyPropagator propagator(one_body);
    std::vector<double> n0(cfg.initial_n.begin(), cfg.initial_n.end());
    out.series = occupations_from_propagator(propagator, n0, times);
  } else {
    const FockSector sector = model1_sector(cfg, options.max_sector_dim);
    const SparseOperator hamiltonian = build_model1(cfg, sector);
    const StateVector psi0 = basis_state(sector, model1_initial(cfg));
    const ModelOneLayout layout{L};
    std::vector<SparseOperator> numbers;
    for (std::size_t l = 0; l < L; ++l) {
      numbers.push_back(ladder_matrix(sector, layout.share(l), LadderKind::Number));
    }
    out.series.times = times;
    if (method == RunMethod::Exact) {
      const auto states = evolve_exact(hamiltonian, psi0, times);
      auto channels = expectation_channels(states, numbers);
      for (std::size_t l = 0; l < L; ++l) {
        out.series.add_channel(indexed("n_", l), std::move(channels[l]));
      }
    } else {  // Series
      for (std::size_t l = 0; l < L; ++l) {
        const SeriesResult series =
            heisenberg_series(hamiltonian, numbers[l], psi0, options.series_order);
        out.radius_hint = series.radius_hint;
        std::vector<double> vals;
        vals.reserve(times.size());
        for (double t : times) vals.push_back(series.evaluate_real(t));
        out.series.add_channel(indexed("n_", l), std::move(vals));
      }
    }
  }

  // The price mode is frozen, so the price channel is a constant line.
  const double price = cfg.epsilon * static_cast<double>(cfg.price_M);
  out.series.add_channel("P_r", std::vector<double>(times.size(), price));

  std::vector<double> total(times.size(), 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    const auto& ch = out.series.channel(indexed("n_", l));
    for (std::size_t i = 0; i < times.size(); ++i) total[i] += ch[i];
  }
  out.report.entries.push_back(drift_entry("N", total));
  return out;
}

EngineOutput run_model2(const ModelTwoConfig& cfg, const Scenario& scenario,
                        const RunOptions& options) {
  cfg.validate();
  const std::vector<double> times = grid_times(scenario, 10.0);
  const std::size_t L = cfg.L();
  const ModelTwoLayout layout{L};

  EngineOutput out;
  out.series.times = times;
  RunMethod method = options.method == RunMethod::Auto ? RunMethod::Exact : options.method;
  if (method == RunMethod::OneBody) {
    throw ConfigError("the onebody method applies to the share-only model1; "
                      "use exact or series here");
  }

  if (method == RunMethod::Exact) {
    const FockSector sector = model2_sector(cfg, options.max_sector_dim);
    const SparseOperator hamiltonian = build_model2(cfg, sector);
    const StateVector psi0 = basis_state(sector, model2_initial(cfg));
    std::vector<SparseOperator> ops;
    for (std::size_t l = 0; l < L; ++l) {
      ops.push_back(ladder_matrix(sector, layout.share(l), LadderKind::Number));
    }
    for (std::size_t l = 0; l < L; ++l) {
      ops.push_back(ladder_matrix(sector, layout.cash(l), LadderKind::Number));
    }
    ops.push_back(ladder_matrix(sector, layout.price(), LadderKind::Number));
    ops.push_back(ladder_matrix(sector, layout.supply(), LadderKind::Number));

    const auto states = evolve_exact(hamiltonian, psi0, times);
    auto channels = expectation_channels(states, ops);
    for (std::size_t l = 0; l < L; ++l) {
      out.series.add_channel(indexed("n_", l), std::move(channels[l]));
    }
    for (std::size_t l = 0; l < L; ++l) {
      out.series.add_channel(indexed("k_", l), std::move(channels[L + l]));
    }
    for (std::size_t l = 0; l < L; ++l) {
      const auto& n = out.series.channel(indexed("n_", l));
      const auto& k = out.series.channel(indexed("k_", l));
      std::vector<double> pi(times.size());
      for (std::size_t i = 0; i < times.size(); ++i) {
        pi[i] = cfg.gamma_share * n[i] + k[i];
      }
      out.series.add_channel(indexed("Pi_", l), std::move(pi));
    }
    out.series.add_channel("P_r", std::move(channels[2 * L]));
    out.series.add_channel("O_f", std::move(channels[2 * L + 1]));
  } else {  // Series
    const FockSector sector = model2_sector(cfg, options.max_sector_dim);
    const SparseOperator hamiltonian = build_model2(cfg, sector);
    const StateVector psi0 = basis_state(sector, model2_initial(cfg));
    const double M = static_cast<double>(cfg.price_M);
    for (std::size_t l = 0; l < L; ++l) {
      const SparseOperator number = ladder_matrix(sector, layout.share(l), LadderKind::Number);
      const SeriesResult series =
          heisenberg_series(hamiltonian, number, psi0, options.series_order);
      out.radius_hint = series.radius_hint;
      std::vector<double> n(times.size()), k(times.size()), pi(times.size());
      const double n0 = static_cast<double>(cfg.initial_n[l]);
      const double k0 = static_cast<double>(cfg.initial_k[l]);
      for (std::size_t i = 0; i < times.size(); ++i) {
        n[i] = series.evaluate_real(times[i]);
        k[i] = k0 - M * (n[i] - n0);
        pi[i] = cfg.gamma_share * n[i] + k[i];
      }
      out.series.add_channel(indexed("n_", l), std::move(n));
      out.series.add_channel(indexed("k_", l), std::move(k));
      out.series.add_channel(indexed("Pi_", l), std::move(pi));
    }
    // Supply and price decouple and follow their two-mode closed form.
    TimeSeries po = price_supply_solution(static_cast<double>(cfg.initial_O),
                                          static_cast<double>(cfg.initial_Mp), times);
    out.series.add_channel("P_r", po.channel("P_r"));
    out.series.add_channel("O_f", po.channel("O_f"));
  }

  const double M = static_cast<double>(cfg.price_M);
  std::vector<double> total_n(times.size(), 0.0), total_k(times.size(), 0.0),
      gamma_sum(times.size(), 0.0);
  for (std::size_t l = 0; l < L; ++l) {
    const auto& n = out.series.channel(indexed("n_", l));
    const auto& k = out.series.channel(indexed("k_", l));
    for (std::size_t i = 0; i < times.size(); ++i) {
      total_n[i] += n[i];
      total_k[i] += k[i];
    }
  }
  const auto& pr = out.series.channel("P_r");
  const auto& of = out.series.channel("O_f");
  for (std::size_t i = 0; i < times.size(); ++i) gamma_sum[i] = pr[i] + of[i];
  out.report.entries.push_back(drift_entry("N", total_n));
  out.report.entries.push_back(drift_entry("K", total_k));
  out.report.entries.push_back(drift_entry("Gamma", gamma_sum));
  for (std::size_t l = 0; l < L; ++l) {
    const auto& n = out.series.channel(indexed("n_", l));
    const auto& k = out.series.channel(indexed("k_", l));
    std::vector<double> q(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) q[i] = n[i] + k[i] / M;
    out.report.entries.push_back(drift_entry(indexed("Q_", l), q));
  }
  return out;
}

EngineOutput run_meanfield(const MeanFieldParams& params, const Scenario& scenario,
                           const RunOptions& options) {
  params.validate();
  if (options.method != RunMethod::Auto) {
    throw ConfigError("mean-field scenarios are closed-form; the method flag does not apply");
  }
  const double omega = meanfield_omega(params);
  const double fallback = omega > 1e-12 ? 2.0 * (2.0 * M_PI / omega) : 10.0;
  const std::vector<double> times = grid_times(scenario, fallback);

  const double nu = params.nu();
  const bool resonant =
      std::abs(params.Phi - nu) <= 1e-12 * std::max({1.0, std::abs(params.Phi), std::abs(nu)});

  EngineOutput out;
  out.series.times = times;
  std::vector<std::vector<double>> n_channels(params.traders.size());
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    auto& n = n_channels[l];
    n.reserve(times.size());
    for (double t : times) {
      n.push_back(resonant ? nl_resonant(params, l, t) : nl_closed_form(params, l, t));
    }
    out.series.add_channel(indexed("n_", l), n);
  }
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    const double ql = params.traders[l].Q();
    std::vector<double> k(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) k[i] = ql - n_channels[l][i];
    out.series.add_channel(indexed("k_", l), std::move(k));
  }
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    const auto& tr = params.traders[l];
    const double pi0 = params.gamma_share * tr.n + tr.k;
    out.series.add_channel(indexed("Pi_", l),
                           portfolio_meanfield(params.gamma_share, n_channels[l], tr.n, pi0));
  }

  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    const double ql = params.traders[l].Q();
    std::vector<double> q(times.size());
    double excess = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      q[i] = n_channels[l][i] + (ql - n_channels[l][i]);
      excess = std::max(excess, occupation_range_excess(n_channels[l][i], ql));
    }
    out.report.entries.push_back(drift_entry(indexed("Q_", l), q));
    if (excess > 0) {
      out.report.notes.push_back(indexed("n_", l) + " leaves the physical band [0, " +
                                 format_value(ql) + "] by up to " + format_value(excess) +
                                 " (closed-form artifact, not clamped)");
    }
  }
  return out;
}

EngineOutput run_appendix2(const Appendix2Params& params, const Scenario& scenario,
                           const RunOptions& options) {
  params.validate();
  if (options.method != RunMethod::Auto) {
    throw ConfigError("mean-field scenarios are closed-form; the method flag does not apply");
  }
  double omega_min = 0;
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    const double w = appendix2_omega(params, l);
    if (w > 1e-12 && (omega_min == 0 || w < omega_min)) omega_min = w;
  }
  const double fallback = omega_min > 0 ? 2.0 * (2.0 * M_PI / omega_min) : 10.0;
  const std::vector<double> times = grid_times(scenario, fallback);

  EngineOutput out;
  out.series.times = times;
  std::vector<std::vector<double>> n_channels(params.traders.size());
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    auto& n = n_channels[l];
    n.reserve(times.size());
    for (double t : times) n.push_back(nl_appendix2(params, l, t));
    out.series.add_channel(indexed("n_", l), n);
  }
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    const double ql = params.traders[l].Q();
    std::vector<double> k(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) k[i] = ql - n_channels[l][i];
    out.series.add_channel(indexed("k_", l), std::move(k));
  }
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    const auto& tr = params.traders[l];
    const double pi0 = params.gamma_share * tr.n + tr.k;
    out.series.add_channel(indexed("Pi_", l),
                           portfolio_meanfield(params.gamma_share, n_channels[l], tr.n, pi0));
  }
  for (std::size_t l = 0; l < params.traders.size(); ++l) {
    const double ql = params.traders[l].Q();
    std::vector<double> q(times.size(), ql);
    double excess = 0;
    for (double v : n_channels[l]) excess = std::max(excess, occupation_range_excess(v, ql));
    out.report.entries.push_back(drift_entry(indexed("Q_", l), q));
    if (excess > 0) {
      out.report.notes.push_back(indexed("n_", l) + " leaves the physical band [0, " +
                                 format_value(ql) + "] by up to " + format_value(excess) +
                                 " (closed-form artifact, not clamped)");
    }
  }
  return out;
}

EngineOutput run_kms(const KmsProblem& problem, const Scenario& scenario,
                     const RunOptions& options) {
  if (options.method != RunMethod::Auto) {
    throw ConfigError("equilibrium scenarios are closed-form; the method flag does not apply");
  }
  const KmsSolution sol = solve_equilibrium(problem);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  EngineOutput out;
  out.series.times = {0.0};
  out.series.add_channel("beta0", {sol.beta0.value_or(nan)});
  out.series.add_channel("nc0", {sol.nc0.value_or(nan)});
  out.series.add_channel("na0", {sol.na0.value_or(nan)});
  out.report.notes.push_back("case " + to_string(sol.case_label) + ", outcome " +
                             to_string(sol.outcome));
  if (sol.outcome != KmsOutcome::none) {
    out.report.notes.push_back("balance residual " + format_value(sol.residual));
  }
  if (scenario.time) {
    out.report.notes.push_back("time grid ignored: equilibrium scenarios are static");
  }
  return out;
}

}  // namespace

// ============================ public surface ===============================

Scenario scenario_from_json(const json& j) {
  try {
    reject_unknown_keys(j, {"name", "model", "config", "time", "outputs"}, "scenario");
    Scenario s;
    if (j.contains("name")) {
      if (!j.at("name").is_string()) throw ConfigError("name must be a string");
      s.name = j.at("name").get<std::string>();
      if (s.name.empty() || s.name.find('/') != std::string::npos ||
          s.name.find('\\') != std::string::npos) {
        throw ConfigError("scenario name must be non-empty and free of path separators");
      }
    }
    const json& model = require_key(j, "model", "scenario");
    if (!model.is_string()) throw ConfigError("model must be a string");
    s.model = model_from_string(model.get<std::string>());

    const json& config = require_key(j, "config", "scenario");
    switch (s.model) {
      case ModelKind::Model1: s.config = parse_model1(config); break;
      case ModelKind::Model2: s.config = parse_model2(config); break;
      case ModelKind::MeanField: s.config = parse_meanfield(config); break;
      case ModelKind::MeanFieldAppendix2: s.config = parse_appendix2(config); break;
      case ModelKind::Kms: s.config = parse_kms(config); break;
    }

    if (j.contains("time")) {
      const json& time = j.at("time");
      reject_unknown_keys(time, {"t_max", "points"}, "time");
      TimeGridSpec grid;
      grid.t_max = as_double(require_key(time, "t_max", "time"), "t_max");
      const std::int64_t points = as_int(require_key(time, "points", "time"), "points");
      if (!(grid.t_max > 0) || !std::isfinite(grid.t_max)) {
        throw ConfigError("t_max must be finite and positive");
      }
      if (points < 2 || points > 1000000) {
        throw ConfigError("points must be between 2 and 1000000");
      }
      grid.points = static_cast<std::size_t>(points);
      s.time = grid;
    }

    if (j.contains("outputs")) {
      const json& outputs = j.at("outputs");
      if (!outputs.is_array()) throw ConfigError("outputs must be an array of channel names");
      for (const auto& o : outputs) {
        if (!o.is_string()) throw ConfigError("outputs must be an array of channel names");
        s.outputs.push_back(o.get<std::string>());
      }
    }

    const auto known = default_channels(s);
    for (const auto& name : s.outputs) {
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        std::string available;
        for (const auto& k : known) {
          if (!available.empty()) available += ", ";
          available += k;
        }
        throw ConfigError("unknown output channel \"" + name + "\" (available: " + available +
                          ")");
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
}

json scenario_to_json(const Scenario& scenario) {
  json j;
  j["name"] = scenario.name;
  j["model"] = model_to_string(scenario.model);
  switch (scenario.model) {
    case ModelKind::Model1: j["config"] = model1_to_json(std::get<ModelOneConfig>(scenario.config)); break;
    case ModelKind::Model2: j["config"] = model2_to_json(std::get<ModelTwoConfig>(scenario.config)); break;
    case ModelKind::MeanField:
      j["config"] = meanfield_to_json(std::get<MeanFieldParams>(scenario.config));
      break;
    case ModelKind::MeanFieldAppendix2:
      j["config"] = appendix2_to_json(std::get<Appendix2Params>(scenario.config));
      break;
    case ModelKind::Kms: j["config"] = kms_to_json(std::get<KmsProblem>(scenario.config)); break;
  }
  if (scenario.time) {
    j["time"] = {{"t_max", scenario.time->t_max},
                 {"points", static_cast<std::int64_t>(scenario.time->points)}};
  }
  if (!scenario.outputs.empty()) j["outputs"] = scenario.outputs;
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file is not valid JSON: " + std::string(e.what()));
  }
  return scenario_from_json(j);
}

bool ConservationReport::pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ConservationEntry& e) { return e.pass; });
}

std::string format_report(const ConservationReport& report) {
  std::ostringstream out;
  out << "conservation report (tolerance " << format_value(report.tolerance) << ")\n";
  for (const auto& e : report.entries) {
    out << e.name << " initial=" << format_value(e.initial)
        << " max_drift=" << format_value(e.max_drift) << ' ' << (e.pass ? "PASS" : "FAIL")
        << '\n';
  }
  for (const auto& note : report.notes) out << "note: " << note << '\n';
  out << "overall " << (report.pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::vector<std::string> default_channels(const Scenario& scenario) {
  std::vector<std::string> out;
  switch (scenario.model) {
    case ModelKind::Model1: {
      const auto& cfg = std::get<ModelOneConfig>(scenario.config);
      for (std::size_t l = 0; l < cfg.L(); ++l) out.push_back(indexed("n_", l));
      out.push_back("P_r");
      break;
    }
    case ModelKind::Model2: {
      const auto& cfg = std::get<ModelTwoConfig>(scenario.config);
      for (std::size_t l = 0; l < cfg.L(); ++l) out.push_back(indexed("n_", l));
      for (std::size_t l = 0; l < cfg.L(); ++l) out.push_back(indexed("k_", l));
      for (std::size_t l = 0; l < cfg.L(); ++l) out.push_back(indexed("Pi_", l));
      out.push_back("P_r");
      out.push_back("O_f");
      break;
    }
    case ModelKind::MeanField: {
      const auto& params = std::get<MeanFieldParams>(scenario.config);
      for (std::size_t l = 0; l < params.traders.size(); ++l) out.push_back(indexed("n_", l));
      for (std::size_t l = 0; l < params.traders.size(); ++l) out.push_back(indexed("k_", l));
      for (std::size_t l = 0; l < params.traders.size(); ++l) out.push_back(indexed("Pi_", l));
      break;
    }
    case ModelKind::MeanFieldAppendix2: {
      const auto& params = std::get<Appendix2Params>(scenario.config);
      for (std::size_t l = 0; l < params.traders.size(); ++l) out.push_back(indexed("n_", l));
      for (std::size_t l = 0; l < params.traders.size(); ++l) out.push_back(indexed("k_", l));
      for (std::size_t l = 0; l < params.traders.size(); ++l) out.push_back(indexed("Pi_", l));
      break;
    }
    case ModelKind::Kms:
      out = {"beta0", "nc0", "na0"};
      break;
  }
  return out;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  EngineOutput engine;
  switch (scenario.model) {
    case ModelKind::Model1:
      engine = run_model1(std::get<ModelOneConfig>(scenario.config), scenario, options);
      break;
    case ModelKind::Model2:
      engine = run_model2(std::get<ModelTwoConfig>(scenario.config), scenario, options);
      break;
    case ModelKind::MeanField:
      engine = run_meanfield(std::get<MeanFieldParams>(scenario.config), scenario, options);
      break;
    case ModelKind::MeanFieldAppendix2:
      engine = run_appendix2(std::get<Appendix2Params>(scenario.config), scenario, options);
      break;
    case ModelKind::Kms:
      engine = run_kms(std::get<KmsProblem>(scenario.config), scenario, options);
      break;
  }

  if (engine.radius_hint > 0 && !engine.series.times.empty() &&
      engine.series.times.back() > engine.radius_hint) {
    engine.report.notes.push_back(
        "series horizon " + format_value(engine.series.times.back()) +
        " exceeds the trust radius " + format_value(engine.radius_hint) +
        "; tail values are extrapolation");
  }

  const std::vector<std::string> requested =
      scenario.outputs.empty() ? default_channels(scenario) : scenario.outputs;
  TimeSeries selected;
  selected.times = engine.series.times;
  for (const auto& name : requested) {
    if (!engine.series.has_channel(name)) {
      throw ConfigError("unknown output channel \"" + name + "\"");
    }
    selected.add_channel(name, engine.series.channel(name));
  }

  std::filesystem::create_directories(options.out_dir);
  RunResult result;
  result.series = std::move(engine.series);
  result.report = std::move(engine.report);
  result.radius_hint = engine.radius_hint;
  result.csv_path = options.out_dir / (scenario.name + ".csv");
  result.report_path = options.out_dir / (scenario.name + ".conservation.txt");
  {
    std::ofstream csv(result.csv_path);
    if (!csv) throw ConfigError("cannot write " + result.csv_path.string());
    write_csv(csv, selected);
  }
  {
    std::ofstream report(result.report_path);
    if (!report) throw ConfigError("cannot write " + result.report_path.string());
    report << format_report(result.report);
  }
  if (options.svg) {
    result.svg_path = options.out_dir / (scenario.name + ".svg");
    std::ofstream svg(result.svg_path);
    if (!svg) throw ConfigError("cannot write " + result.svg_path.string());
    svg << render_line_plot(selected, scenario.name);
  }
  return result;
}

ConservationReport verify_scenario(const Scenario& scenario, const RunOptions& options,
                                   bool inject_noncommuting) {
  if (scenario.model != ModelKind::Model1 && scenario.model != ModelKind::Model2) {
    throw ConfigError("unsupported model for verify: conservation of " +
                      model_to_string(scenario.model) +
                      " scenarios is analytic, not operator dynamics");
  }

  FockSector sector(1, {OccupationVector{0}});
  SparseOperator hamiltonian = SparseOperator::identity(1);
  std::vector<NamedOperator> conserved;
  OccupationVector initial;
  std::vector<double> times;

  if (scenario.model == ModelKind::Model1) {
    const auto& cfg = std::get<ModelOneConfig>(scenario.config);
    cfg.validate();
    initial = model1_initial(cfg);
    times = grid_times(scenario, default_t_max(one_body_matrix(cfg)));
    sector = model1_sector(cfg, options.max_sector_dim);
    if (inject_noncommuting) {
      const ModelOneLayout layout{cfg.L()};
      auto generators = sector.generators();
      generators.push_back(HopGenerator{{{layout.share(0), +1}, {layout.price(), -1}}});
      sector = enumerate_sector(initial, generators, options.max_sector_dim);
    }
    hamiltonian = build_model1(cfg, sector);
    if (inject_noncommuting) {
      const ModelOneLayout layout{cfg.L()};
      const SparseOperator leak =
          hop_operator(sector, layout.share(0), layout.price(), std::nullopt, std::nullopt, 0);
      hamiltonian += leak;
      hamiltonian += leak.adjoint();
    }
    conserved = conserved_set(cfg, sector);
  } else {
    const auto& cfg = std::get<ModelTwoConfig>(scenario.config);
    cfg.validate();
    if (inject_noncommuting && cfg.L() < 2) {
      throw ConfigError("the conservation-breaking hook needs at least two traders");
    }
    initial = model2_initial(cfg);
    times = grid_times(scenario, 10.0);
    sector = model2_sector(cfg, options.max_sector_dim);
    if (inject_noncommuting) {
      const ModelTwoLayout layout{cfg.L()};
      auto generators = sector.generators();
      generators.push_back(HopGenerator{{{layout.share(0), +1}, {layout.share(1), -1}}});
      sector = enumerate_sector(initial, generators, options.max_sector_dim);
    }
    hamiltonian = build_model2(cfg, sector);
    if (inject_noncommuting) {
      const ModelTwoLayout layout{cfg.L()};
      const SparseOperator leak =
          hop_operator(sector, layout.share(0), layout.share(1), std::nullopt, std::nullopt, 0);
      hamiltonian += leak;
      hamiltonian += leak.adjoint();
    }
    conserved = conserved_set(cfg, sector);
  }

  const StateVector psi0 = basis_state(sector, initial);
  const auto states = evolve_exact(hamiltonian, psi0, times);

  ConservationReport report;
  for (const auto& named : conserved) {
    std::vector<double> vals;
    vals.reserve(states.size());
    for (const auto& psi : states) vals.push_back(real_expectation(psi, named.op));
    report.entries.push_back(drift_entry(named.name, vals));
  }
  if (inject_noncommuting) {
    report.notes.push_back("a non-commuting exchange term was injected (test hook)");
  }
  return report;
}

std::size_t max_dim_from_env(std::size_t fallback) {
  const char* raw = std::getenv("FOCKMARKET_MAX_DIM");
  if (raw == nullptr || *raw == '\0') return fallback;
  unsigned long long value = 0;
  const char* end = raw + std::string_view(raw).size();
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) {
    throw ConfigError("FOCKMARKET_MAX_DIM must be a positive integer, got \"" +
                      std::string(raw) + "\"");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace fockmarket
