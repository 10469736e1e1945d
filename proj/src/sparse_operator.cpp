#include "fockmarket/sparse_operator.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fockmarket/errors.hpp"

namespace fockmarket {

namespace {

void check_same_dim(const SparseOperator& a, const SparseOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw InternalError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                        " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

SparseOperator::SparseOperator(std::size_t dim)
    : mat_(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) {}

SparseOperator::SparseOperator(Eigen::SparseMatrix<Complex> mat) : mat_(std::move(mat)) {
  mat_.makeCompressed();
}

SparseOperator SparseOperator::from_triplets(std::size_t dim, const std::vector<Triplet>& entries) {
  for (const auto& t : entries) {
    if (t.row() < 0 || t.col() < 0 || static_cast<std::size_t>(t.row()) >= dim ||
        static_cast<std::size_t>(t.col()) >= dim) {
      throw InternalError("sparse entry index outside operator dimension");
    }
  }
  Eigen::SparseMatrix<Complex> mat(static_cast<Eigen::Index>(dim),
                                   static_cast<Eigen::Index>(dim));
  mat.setFromTriplets(entries.begin(), entries.end());
  return SparseOperator(std::move(mat));
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  Eigen::SparseMatrix<Complex> mat(static_cast<Eigen::Index>(dim),
                                   static_cast<Eigen::Index>(dim));
  mat.setIdentity();
  return SparseOperator(std::move(mat));
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
  check_same_dim(*this, other, "operator+");
  mat_ = (mat_ + other.mat_).pruned(0.0, 0.0);
  mat_.makeCompressed();
  return *this;
}

SparseOperator& SparseOperator::operator-=(const SparseOperator& other) {
  check_same_dim(*this, other, "operator-");
  mat_ = (mat_ - other.mat_).pruned(0.0, 0.0);
  mat_.makeCompressed();
  return *this;
}

SparseOperator& SparseOperator::operator*=(Complex factor) {
  mat_ *= factor;
  return *this;
}

SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
  check_same_dim(a, b, "operator*");
  Eigen::SparseMatrix<Complex> prod = a.mat_ * b.mat_;
  return SparseOperator(std::move(prod));
}

SparseOperator SparseOperator::adjoint() const {
  Eigen::SparseMatrix<Complex> adj = mat_.adjoint();
  return SparseOperator(std::move(adj));
}

double SparseOperator::max_abs() const {
  double best = 0;
  for_each_entry([&](std::size_t, std::size_t, Complex v) { best = std::max(best, std::abs(v)); });
  return best;
}

bool SparseOperator::is_hermitian(double tol) const {
  Eigen::SparseMatrix<Complex> adj = mat_.adjoint();
  Eigen::SparseMatrix<Complex> diff = mat_ - adj;
  double worst = 0;
  for (int outer = 0; outer < diff.outerSize(); ++outer) {
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(diff, outer); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst <= tol;
}

void SparseOperator::prune(double tol) {
  std::vector<Triplet> kept;
  kept.reserve(entry_count());
  for_each_entry([&](std::size_t r, std::size_t c, Complex v) {
    if (std::abs(v) > tol) kept.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
  });
  Eigen::SparseMatrix<Complex> mat(mat_.rows(), mat_.cols());
  mat.setFromTriplets(kept.begin(), kept.end());
  mat_ = std::move(mat);
  mat_.makeCompressed();
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (static_cast<std::size_t>(v.size()) != dim()) {
    throw InternalError("apply: vector length does not match operator dimension");
  }
  return mat_ * v;
}

Eigen::MatrixXcd SparseOperator::dense() const { return Eigen::MatrixXcd(mat_); }

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

}  // namespace fockmarket
