#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace fockmarket {

using Complex = std::complex<double>;

// Sparse operator on a fixed-dimension sector basis. Construction compresses
// duplicate (row, col) triplets by summing them, so stored entries are unique.
class SparseOperator {
 public:
  using Triplet = Eigen::Triplet<Complex>;

  explicit SparseOperator(std::size_t dim = 0);
  static SparseOperator from_triplets(std::size_t dim, const std::vector<Triplet>& entries);
  static SparseOperator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
  std::size_t entry_count() const { return static_cast<std::size_t>(mat_.nonZeros()); }

  SparseOperator& operator+=(const SparseOperator& other);
  SparseOperator& operator-=(const SparseOperator& other);
  SparseOperator& operator*=(Complex factor);
  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b);
  friend SparseOperator operator*(Complex factor, SparseOperator a) { return a *= factor; }

  SparseOperator adjoint() const;
  double max_abs() const;  // largest |entry|
  bool is_hermitian(double tol) const;
  void prune(double tol);  // drop entries with |value| <= tol
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::MatrixXcd dense() const;
  const Eigen::SparseMatrix<Complex>& matrix() const { return mat_; }

  // Calls f(row, col, value) for every stored entry.
  template <class F>
  void for_each_entry(F&& f) const {
    for (int outer = 0; outer < mat_.outerSize(); ++outer) {
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(mat_, outer); it; ++it) {
        f(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value());
      }
    }
  }

 private:
  explicit SparseOperator(Eigen::SparseMatrix<Complex> mat);
  Eigen::SparseMatrix<Complex> mat_;
};

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

}  // namespace fockmarket
