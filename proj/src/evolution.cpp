#include "fockmarket/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "fockmarket/errors.hpp"

namespace fockmarket {

namespace {

// Real spectral enclosure [lo, hi] of a Hermitian sparse matrix from
// Gershgorin discs.
std::pair<double, double> gershgorin_bounds(const Eigen::SparseMatrix<Complex>& mat) {
  const Eigen::Index n = mat.rows();
  Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd radius = Eigen::VectorXd::Zero(n);
  for (int outer = 0; outer < mat.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(mat, outer); it; ++it) {
      if (it.row() == it.col()) {
        center[it.row()] = it.value().real();
      } else {
        radius[it.col()] += std::abs(it.value());
      }
    }
  }
  if (n == 0) return {0.0, 0.0};
  double lo = center[0] - radius[0];
  double hi = center[0] + radius[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    lo = std::min(lo, center[i] - radius[i]);
    hi = std::max(hi, center[i] + radius[i]);
  }
  return {lo, hi};
}

std::vector<StateVector> evolve_dense(const SparseOperator& hamiltonian,
                                      const StateVector& initial,
                                      const std::vector<double>& times) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian.dense());
  if (solver.info() != Eigen::Success) {
    throw InternalError("eigendecomposition of the Hamiltonian failed");
  }
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();
  const Eigen::VectorXd& vals = solver.eigenvalues();
  const Eigen::VectorXcd projected = vecs.adjoint() * initial;

  std::vector<StateVector> states;
  states.reserve(times.size());
  for (double t : times) {
    Eigen::VectorXcd phased = projected;
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      phased[i] *= std::exp(Complex(0, -vals[i] * t));
    }
    states.push_back(vecs * phased);
  }
  return states;
}

class ChebyshevStepper {
 public:
  ChebyshevStepper(const Eigen::SparseMatrix<Complex>& mat, double cutoff)
      : mat_(mat), cutoff_(cutoff) {
    auto [lo, hi] = gershgorin_bounds(mat);
    center_ = 0.5 * (hi + lo);
    radius_ = 0.5 * (hi - lo) * 1.01 + 1e-9;
  }

  // psi <- exp(-i H dt) psi
  void step(Eigen::VectorXcd& psi, double dt) const {
    if (dt == 0) return;
    const double z = radius_ * dt;
    const double az = std::abs(z);
    const double zsign = z < 0 ? -1.0 : 1.0;

    // expansion weights (2 - delta_m0) (-i)^m J_m(z); J_m(-z) = (-1)^m J_m(z)
    std::vector<double> bessel;
    int tail = 0;
    for (int m = 0;; ++m) {
      const double v = std::cyl_bessel_j(static_cast<double>(m), az);
      bessel.push_back(v);
      if (static_cast<double>(m) > az && std::abs(v) < cutoff_) {
        if (++tail >= 3) break;
      } else {
        tail = 0;
      }
      if (m > 4 * az + 4000) {
        throw InternalError("expansion of the propagator failed to converge");
      }
    }

    Eigen::VectorXcd prev = psi;          // T_0 psi
    Eigen::VectorXcd curr = scaled(psi);  // T_1 psi
    Eigen::VectorXcd acc = bessel[0] * prev;
    Complex weight(1, 0);
    for (std::size_t m = 1; m < bessel.size(); ++m) {
      weight *= Complex(0, -zsign);  // (-i)^m, sign-folded for negative dt
      acc += 2.0 * weight * bessel[m] * curr;
      if (m + 1 < bessel.size()) {
        Eigen::VectorXcd next = 2.0 * scaled(curr) - prev;
        prev = std::move(curr);
        curr = std::move(next);
      }
    }
    acc *= std::exp(Complex(0, -center_ * dt));

    const double before = psi.norm();
    psi = std::move(acc);
    if (std::abs(psi.norm() - before) > 1e-11 * std::max(1.0, before)) {
      throw InternalError("propagation step lost norm; spectral enclosure violated");
    }
  }

 private:
  Eigen::VectorXcd scaled(const Eigen::VectorXcd& v) const {
    return (mat_ * v - center_ * v) / radius_;
  }

  const Eigen::SparseMatrix<Complex>& mat_;
  double cutoff_;
  double center_ = 0;
  double radius_ = 1;
};

std::vector<StateVector> evolve_chebyshev(const SparseOperator& hamiltonian,
                                          const StateVector& initial,
                                          const std::vector<double>& times, double cutoff) {
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });

  ChebyshevStepper stepper(hamiltonian.matrix(), cutoff);
  std::vector<StateVector> states(times.size());
  Eigen::VectorXcd psi = initial;
  double current = 0;
  for (std::size_t idx : order) {
    stepper.step(psi, times[idx] - current);
    current = times[idx];
    states[idx] = psi;
  }
  return states;
}

}  // namespace

std::vector<StateVector> evolve_exact(const SparseOperator& hamiltonian,
                                      const StateVector& initial,
                                      const std::vector<double>& times,
                                      const EvolveOptions& options) {
  if (static_cast<std::size_t>(initial.size()) != hamiltonian.dim()) {
    throw InternalError("evolve_exact: state length does not match the Hamiltonian");
  }
  if (!hamiltonian.is_hermitian(options.hermiticity_tol)) {
    throw InternalError("evolve_exact requires a Hermitian Hamiltonian");
  }
  if (hamiltonian.dim() <= options.dense_threshold) {
    return evolve_dense(hamiltonian, initial, times);
  }
  return evolve_chebyshev(hamiltonian, initial, times, options.coefficient_cutoff);
}

}  // namespace fockmarket
