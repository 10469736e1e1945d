#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fockmarket/operators.hpp"
#include "fockmarket/sector.hpp"
#include "fockmarket/sparse_operator.hpp"

namespace fockmarket {

// Quadratic market: L traders exchanging single share quanta, plus a frozen
// price mode contributing epsilon * n_price to the energy.
struct ModelOneConfig {
  std::vector<double> alpha;             // trader energies
  Eigen::MatrixXd p;                     // hop weights: symmetric, zero diagonal, >= 0
  std::vector<std::int64_t> initial_n;   // shares per trader at t = 0
  std::int64_t price_M = 0;              // price-mode quanta (frozen)
  double epsilon = 1.0;                  // price-operator weight

  std::size_t L() const { return alpha.size(); }
  void validate() const;
};

// Share-for-cash market: every share hop moves price_M cash quanta the
// opposite way, and a supply mode exchanges quanta with the price mode.
struct ModelTwoConfig {
  std::vector<double> alpha;             // share-mode energies
  std::vector<double> beta;              // cash-mode energies
  Eigen::MatrixXd p;                     // hop weights: symmetric, zero diagonal, >= 0
  std::int64_t price_M = 1;              // cash quanta moved per share (effective price), >= 1
  std::vector<std::int64_t> initial_n;   // shares per trader
  std::vector<std::int64_t> initial_k;   // cash per trader
  std::int64_t initial_O = 0;            // supply-mode quanta
  std::int64_t initial_Mp = 0;           // price-mode quanta
  double gamma_share = 1.0;              // share weight in portfolio values

  std::size_t L() const { return alpha.size(); }
  void validate() const;
};

struct ModelOneLayout {
  std::size_t L = 0;
  std::size_t share(std::size_t l) const { return l; }
  std::size_t price() const { return L; }
  std::size_t mode_count() const { return L + 1; }
};

struct ModelTwoLayout {
  std::size_t L = 0;
  std::size_t share(std::size_t l) const { return l; }
  std::size_t cash(std::size_t l) const { return L + l; }
  std::size_t supply() const { return 2 * L; }
  std::size_t price() const { return 2 * L + 1; }
  std::size_t mode_count() const { return 2 * L + 2; }
};

FockSector model1_sector(const ModelOneConfig& config,
                         std::size_t max_dim = kDefaultMaxSectorDim);
FockSector model2_sector(const ModelTwoConfig& config,
                         std::size_t max_dim = kDefaultMaxSectorDim);

// H = sum_l alpha_l n_l + sum_{l != m} p_lm a_l^dag a_m + epsilon n_price,
// every directed hop entering once with weight p_lm.
SparseOperator build_model1(const ModelOneConfig& config, const FockSector& sector);

// H = sum_l (alpha_l n_l^a + beta_l n_l^c) + n_o + n_p
//   + sum_{l != m} p_lm a_l^dag a_m (c_l)^M (c_m^dag)^M + (o^dag p + p^dag o).
SparseOperator build_model2(const ModelTwoConfig& config, const FockSector& sector);

struct NamedOperator {
  std::string name;
  SparseOperator op;
};

// Conserved observables: {N} for model one; {N, K, Gamma, Q_1..Q_L} for
// model two, with Q_j = n_j + k_j / M.
std::vector<NamedOperator> conserved_set(const ModelOneConfig& config, const FockSector& sector);
std::vector<NamedOperator> conserved_set(const ModelTwoConfig& config, const FockSector& sector);

}  // namespace fockmarket
