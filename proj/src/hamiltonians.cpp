#include "fockmarket/hamiltonians.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "fockmarket/errors.hpp"

namespace fockmarket {

namespace {

void check_hop_matrix(const Eigen::MatrixXd& p, std::size_t L) {
  if (static_cast<std::size_t>(p.rows()) != L || static_cast<std::size_t>(p.cols()) != L) {
    throw ConfigError("hop matrix must be L x L");
  }
  for (std::size_t i = 0; i < L; ++i) {
    if (p(i, i) != 0.0) throw ConfigError("hop matrix must have a zero diagonal");
    for (std::size_t j = 0; j < L; ++j) {
      if (!std::isfinite(p(i, j)) || p(i, j) < 0) {
        throw ConfigError("hop matrix entries must be finite and non-negative");
      }
      if (p(i, j) != p(j, i)) throw ConfigError("hop matrix must be symmetric");
    }
  }
}

void check_quanta(const std::vector<std::int64_t>& v, std::size_t L, const char* what) {
  if (v.size() != L) throw ConfigError(std::string(what) + " must list one value per trader");
  for (auto q : v) {
    if (q < 0) throw ConfigError(std::string(what) + " entries must be non-negative");
  }
}

SparseOperator diagonal_operator(const FockSector& sector,
                                 const std::function<double(const OccupationVector&)>& value) {
  std::vector<SparseOperator::Triplet> entries;
  entries.reserve(sector.dim());
  for (std::size_t i = 0; i < sector.dim(); ++i) {
    const double v = value(sector.state(i));
    if (v != 0.0) entries.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex(v, 0));
  }
  return SparseOperator::from_triplets(sector.dim(), entries);
}

}  // namespace

void ModelOneConfig::validate() const {
  const std::size_t n = L();
  if (n < 1) throw ConfigError("model needs at least one trader");
  for (double a : alpha) {
    if (!std::isfinite(a)) throw ConfigError("trader energies must be finite");
  }
  check_hop_matrix(p, n);
  check_quanta(initial_n, n, "initial shares");
  if (price_M < 0) throw ConfigError("price quanta must be non-negative");
  if (!std::isfinite(epsilon)) throw ConfigError("price weight must be finite");
}

void ModelTwoConfig::validate() const {
  const std::size_t n = L();
  if (n < 1) throw ConfigError("model needs at least one trader");
  if (beta.size() != n) throw ConfigError("cash energies must list one value per trader");
  for (double a : alpha) {
    if (!std::isfinite(a)) throw ConfigError("share energies must be finite");
  }
  for (double b : beta) {
    if (!std::isfinite(b)) throw ConfigError("cash energies must be finite");
  }
  check_hop_matrix(p, n);
  check_quanta(initial_n, n, "initial shares");
  check_quanta(initial_k, n, "initial cash");
  if (price_M < 1) throw ConfigError("the effective price M must be a positive integer");
  if (initial_O < 0 || initial_Mp < 0) {
    throw ConfigError("supply and price quanta must be non-negative");
  }
  if (!std::isfinite(gamma_share)) throw ConfigError("share weight must be finite");
}

FockSector model1_sector(const ModelOneConfig& config, std::size_t max_dim) {
  config.validate();
  const ModelOneLayout layout{config.L()};
  OccupationVector initial(layout.mode_count(), 0);
  for (std::size_t l = 0; l < config.L(); ++l) initial[layout.share(l)] = config.initial_n[l];
  initial[layout.price()] = config.price_M;

  std::vector<HopGenerator> generators;
  for (std::size_t l = 0; l < config.L(); ++l) {
    for (std::size_t m = l + 1; m < config.L(); ++m) {
      if (config.p(l, m) == 0.0) continue;
      generators.push_back({{{layout.share(l), +1}, {layout.share(m), -1}}});
    }
  }
  return enumerate_sector(initial, generators, max_dim);
}

FockSector model2_sector(const ModelTwoConfig& config, std::size_t max_dim) {
  config.validate();
  const ModelTwoLayout layout{config.L()};
  OccupationVector initial(layout.mode_count(), 0);
  for (std::size_t l = 0; l < config.L(); ++l) {
    initial[layout.share(l)] = config.initial_n[l];
    initial[layout.cash(l)] = config.initial_k[l];
  }
  initial[layout.supply()] = config.initial_O;
  initial[layout.price()] = config.initial_Mp;

  std::vector<HopGenerator> generators;
  for (std::size_t l = 0; l < config.L(); ++l) {
    for (std::size_t m = l + 1; m < config.L(); ++m) {
      if (config.p(l, m) == 0.0) continue;
      generators.push_back({{{layout.share(l), +1},
                             {layout.share(m), -1},
                             {layout.cash(l), -config.price_M},
                             {layout.cash(m), +config.price_M}}});
    }
  }
  generators.push_back({{{layout.supply(), +1}, {layout.price(), -1}}});
  return enumerate_sector(initial, generators, max_dim);
}

SparseOperator build_model1(const ModelOneConfig& config, const FockSector& sector) {
  config.validate();
  const ModelOneLayout layout{config.L()};
  if (sector.mode_count() != layout.mode_count()) {
    throw InternalError("sector does not match the model's mode layout");
  }

  SparseOperator h = diagonal_operator(sector, [&](const OccupationVector& s) {
    double e = config.epsilon * static_cast<double>(s[layout.price()]);
    for (std::size_t l = 0; l < config.L(); ++l) {
      e += config.alpha[l] * static_cast<double>(s[layout.share(l)]);
    }
    return e;
  });

  for (std::size_t l = 0; l < config.L(); ++l) {
    for (std::size_t m = l + 1; m < config.L(); ++m) {
      if (config.p(l, m) == 0.0) continue;
      SparseOperator hop = hop_operator(sector, layout.share(l), layout.share(m), {}, {}, 0);
      h += Complex(config.p(l, m), 0) * (hop + hop.adjoint());
    }
  }
  return h;
}

SparseOperator build_model2(const ModelTwoConfig& config, const FockSector& sector) {
  config.validate();
  const ModelTwoLayout layout{config.L()};
  if (sector.mode_count() != layout.mode_count()) {
    throw InternalError("sector does not match the model's mode layout");
  }

  SparseOperator h = diagonal_operator(sector, [&](const OccupationVector& s) {
    double e = static_cast<double>(s[layout.supply()]) + static_cast<double>(s[layout.price()]);
    for (std::size_t l = 0; l < config.L(); ++l) {
      e += config.alpha[l] * static_cast<double>(s[layout.share(l)]);
      e += config.beta[l] * static_cast<double>(s[layout.cash(l)]);
    }
    return e;
  });

  for (std::size_t l = 0; l < config.L(); ++l) {
    for (std::size_t m = l + 1; m < config.L(); ++m) {
      if (config.p(l, m) == 0.0) continue;
      SparseOperator hop = hop_operator(sector, layout.share(l), layout.share(m),
                                        layout.cash(l), layout.cash(m), config.price_M);
      h += Complex(config.p(l, m), 0) * (hop + hop.adjoint());
    }
  }

  SparseOperator exchange = hop_operator(sector, layout.supply(), layout.price(), {}, {}, 0);
  h += exchange + exchange.adjoint();
  return h;
}

std::vector<NamedOperator> conserved_set(const ModelOneConfig& config, const FockSector& sector) {
  const ModelOneLayout layout{config.L()};
  SparseOperator total = diagonal_operator(sector, [&](const OccupationVector& s) {
    std::int64_t n = 0;
    for (std::size_t l = 0; l < config.L(); ++l) n += s[layout.share(l)];
    return static_cast<double>(n);
  });
  std::vector<NamedOperator> ops;
  ops.push_back({"N", std::move(total)});
  return ops;
}

std::vector<NamedOperator> conserved_set(const ModelTwoConfig& config, const FockSector& sector) {
  const ModelTwoLayout layout{config.L()};
  std::vector<NamedOperator> ops;
  ops.push_back({"N", diagonal_operator(sector, [&](const OccupationVector& s) {
                   std::int64_t n = 0;
                   for (std::size_t l = 0; l < config.L(); ++l) n += s[layout.share(l)];
                   return static_cast<double>(n);
                 })});
  ops.push_back({"K", diagonal_operator(sector, [&](const OccupationVector& s) {
                   std::int64_t k = 0;
                   for (std::size_t l = 0; l < config.L(); ++l) k += s[layout.cash(l)];
                   return static_cast<double>(k);
                 })});
  ops.push_back({"Gamma", diagonal_operator(sector, [&](const OccupationVector& s) {
                   return static_cast<double>(s[layout.supply()] + s[layout.price()]);
                 })});
  for (std::size_t j = 0; j < config.L(); ++j) {
    // integer numerator so hop images get exactly equal eigenvalues
    ops.push_back({"Q_" + std::to_string(j + 1),
                   diagonal_operator(sector, [&, j](const OccupationVector& s) {
                     const std::int64_t numer =
                         config.price_M * s[layout.share(j)] + s[layout.cash(j)];
                     return static_cast<double>(numer) / static_cast<double>(config.price_M);
                   })});
  }
  return ops;
}

}  // namespace fockmarket
