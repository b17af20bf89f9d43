#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sparsekit {

using Vector = std::vector<double>;
using IndexList = std::vector<std::size_t>;

namespace tolerances {
/// L·Lᵀ must reproduce the Gram matrix of the selected atoms to this (Frobenius).
inline constexpr double kCholeskyConsistency = 1e-10;
/// Squared Cholesky pivot at or below this marks a numerically dependent column.
inline constexpr double kCholeskyPivot = 1e-12;
/// Largest tolerated |M(i,j) - M(j,i)| for a matrix treated as symmetric.
inline constexpr double kSymmetry = 1e-10;
/// Power iteration stops once successive norm estimates agree to this (relative).
inline constexpr double kPowerIterationTol = 1e-10;
inline constexpr int kPowerIterationMaxIters = 10'000;
/// Seed of the restart vector used when the all-ones start stagnates.
inline constexpr unsigned long long kPowerIterationRestartSeed = 0x5eed0fd1ceULL;
}  // namespace tolerances

/// Dense real matrix, column-major. Columns are contiguous, which is what the
/// atom-correlation kernels want.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  /// Takes column-major data; throws InvalidArgument on size mismatch or non-finite entries.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[j * rows_ + i]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[j * rows_ + i]; }

  std::span<const double> col(std::size_t j) const noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }

  std::span<const double> data() const noexcept { return data_; }

  /// out = Aᵀ x (all column inner products).
  Vector transpose_times(std::span<const double> x) const;
  /// out = A x.
  Vector times(std::span<const double> x) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Throws InvalidArgument unless `indices` is non-empty, duplicate-free and
/// every entry is < `bound`.
void validate_index_set(std::span<const std::size_t> indices, std::size_t bound);

/// |J|×|J| Gram matrix of the columns J of D.
DenseMatrix gram(const DenseMatrix& d, std::span<const std::size_t> columns);

/// Frobenius norm of a - b (same shape required).
double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b);

/// Incrementally maintained Cholesky factor of the Gram matrix of a growing
/// set of columns. L is stored packed row by row (row k holds k+1 entries).
class CholeskyState {
 public:
  CholeskyState() = default;

  std::size_t size() const noexcept { return selected_.size(); }
  bool empty() const noexcept { return selected_.empty(); }
  const IndexList& selected() const noexcept { return selected_; }

  /// L(i, j) for j <= i.
  double factor(std::size_t i, std::size_t j) const noexcept { return packed_[i * (i + 1) / 2 + j]; }
  /// Dense copy of L.
  DenseMatrix lower() const;

  /// Adds column j of D. O(k·d + k²). Throws InvalidArgument if j is out of
  /// range or already selected and RankDegenerate if the squared pivot is at
  /// or below tolerances::kCholeskyPivot; the state is unchanged on throw.
  void append(const DenseMatrix& d, std::size_t j);

  /// Solves (L Lᵀ) x = rhs.
  Vector solve(std::span<const double> rhs) const;

  /// ‖L Lᵀ - gram(D, selected)‖_F, for re-checking the invariant on demand.
  double consistency_error(const DenseMatrix& d) const;

 private:
  IndexList selected_;
  std::vector<double> packed_;
};

/// Functional form of CholeskyState::append.
CholeskyState cholesky_append(CholeskyState state, const DenseMatrix& d, std::size_t j);

/// Batch factorisation of gram(D, columns) through repeated appends.
CholeskyState cholesky_factor(const DenseMatrix& d, std::span<const std::size_t> columns);

struct Projection {
  Vector residual;  // y - P(D_J) y
  Vector coeffs;    // least-squares coefficients aligned with state.selected()
};

/// Least-squares fit of y on the selected columns. An empty state returns
/// residual = y and no coefficients.
Projection project_residual(const CholeskyState& state, const DenseMatrix& d, std::span<const double> y);

/// Largest absolute eigenvalue of a symmetric matrix by power iteration.
/// Throws InvalidArgument if asymmetric beyond tolerances::kSymmetry and
/// NumericalFailure (carrying the last iterate) if it does not converge.
double sym_op_norm(const DenseMatrix& m);

}  // namespace sparsekit
