#include "sparsekit/linops.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"

namespace sparsekit {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> column_major)
    : rows_(rows), cols_(cols), data_(std::move(column_major)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("DenseMatrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                          std::to_string(data_.size()));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw InvalidArgument("DenseMatrix: non-finite entry");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector DenseMatrix::transpose_times(std::span<const double> x) const {
  if (x.size() != rows_) throw InvalidArgument("transpose_times: dimension mismatch");
  Vector out(cols_);
  kernels::active().gemv_t(data_.data(), rows_, cols_, x.data(), out.data());
  return out;
}

Vector DenseMatrix::times(std::span<const double> x) const {
  if (x.size() != cols_) throw InvalidArgument("times: dimension mismatch");
  Vector out(rows_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (x[j] != 0.0) kernels::axpy(x[j], col(j), out);
  }
  return out;
}

void validate_index_set(std::span<const std::size_t> indices, std::size_t bound) {
  if (indices.empty()) throw InvalidArgument("index set must be non-empty");
  std::vector<bool> seen(bound, false);
  for (std::size_t idx : indices) {
    if (idx >= bound) {
      throw InvalidArgument("index " + std::to_string(idx) + " out of range [0, " + std::to_string(bound) + ")");
    }
    if (seen[idx]) throw InvalidArgument("duplicate index " + std::to_string(idx));
    seen[idx] = true;
  }
}

DenseMatrix gram(const DenseMatrix& d, std::span<const std::size_t> columns) {
  validate_index_set(columns, d.cols());
  const std::size_t k = columns.size();
  DenseMatrix g(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const double v = kernels::dot(d.col(columns[a]), d.col(columns[b]));
      g(a, b) = v;
      g(b, a) = v;
    }
  }
  return g;
}

double frobenius_distance(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("frobenius_distance: shape mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double diff = a.data()[i] - b.data()[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

// --- CholeskyState ----------------------------------------------------------

DenseMatrix CholeskyState::lower() const {
  const std::size_t k = size();
  DenseMatrix l(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) l(i, j) = factor(i, j);
  }
  return l;
}

void CholeskyState::append(const DenseMatrix& d, std::size_t j) {
  if (j >= d.cols()) throw InvalidArgument("cholesky_append: column " + std::to_string(j) + " out of range");
  if (std::find(selected_.begin(), selected_.end(), j) != selected_.end()) {
    throw InvalidArgument("cholesky_append: column " + std::to_string(j) + " already selected");
  }
  const std::size_t k = size();
  const auto atom = d.col(j);

  // New row l solves L l = g with g the inner products against the selected atoms.
  Vector row(k + 1);
  double tail = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double v = kernels::dot(d.col(selected_[i]), atom);
    for (std::size_t m = 0; m < i; ++m) v -= factor(i, m) * row[m];
    row[i] = v / factor(i, i);
    tail += row[i] * row[i];
  }
  const double pivot_sq = kernels::squared_norm(atom) - tail;
  if (!(pivot_sq > tolerances::kCholeskyPivot)) {
    throw RankDegenerate("cholesky_append: column " + std::to_string(j) +
                             " is numerically dependent on the selected set (squared pivot " +
                             std::to_string(pivot_sq) + ")",
                         j, pivot_sq);
  }
  row[k] = std::sqrt(pivot_sq);
  packed_.insert(packed_.end(), row.begin(), row.end());
  selected_.push_back(j);
}

Vector CholeskyState::solve(std::span<const double> rhs) const {
  const std::size_t k = size();
  if (rhs.size() != k) throw InvalidArgument("CholeskyState::solve: dimension mismatch");
  Vector x(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < k; ++i) {
    double v = x[i];
    for (std::size_t m = 0; m < i; ++m) v -= factor(i, m) * x[m];
    x[i] = v / factor(i, i);
  }
  for (std::size_t i = k; i-- > 0;) {
    double v = x[i];
    for (std::size_t m = i + 1; m < k; ++m) v -= factor(m, i) * x[m];
    x[i] = v / factor(i, i);
  }
  return x;
}

double CholeskyState::consistency_error(const DenseMatrix& d) const {
  if (empty()) return 0.0;
  const DenseMatrix l = lower();
  const std::size_t k = size();
  DenseMatrix llt(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = 0.0;
      for (std::size_t m = 0; m <= j; ++m) v += l(i, m) * l(j, m);
      llt(i, j) = v;
      llt(j, i) = v;
    }
  }
  return frobenius_distance(llt, gram(d, selected_));
}

CholeskyState cholesky_append(CholeskyState state, const DenseMatrix& d, std::size_t j) {
  state.append(d, j);
  return state;
}

CholeskyState cholesky_factor(const DenseMatrix& d, std::span<const std::size_t> columns) {
  CholeskyState state;
  for (std::size_t j : columns) state.append(d, j);
  return state;
}

Projection project_residual(const CholeskyState& state, const DenseMatrix& d, std::span<const double> y) {
  if (y.size() != d.rows()) throw InvalidArgument("project_residual: signal length mismatch");
  Projection out;
  out.residual.assign(y.begin(), y.end());
  if (state.empty()) return out;
  const auto& sel = state.selected();
  Vector rhs(sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i) rhs[i] = kernels::dot(d.col(sel[i]), y);
  out.coeffs = state.solve(rhs);
  for (std::size_t i = 0; i < sel.size(); ++i) kernels::axpy(-out.coeffs[i], d.col(sel[i]), out.residual);
  return out;
}

// --- Operator norm ----------------------------------------------------------

namespace {

struct PowerOutcome {
  double estimate;
  Vector vector;
  bool converged;
  bool collapsed;  // M v vanished
};

PowerOutcome power_iterate(const DenseMatrix& m, Vector v) {
  const std::size_t n = m.rows();
  double prev = 0.0;
  Vector w(n);
  for (int it = 0; it < tolerances::kPowerIterationMaxIters; ++it) {
    w = m.times(v);
    const double est = std::sqrt(kernels::squared_norm(w));
    if (est == 0.0) return {0.0, v, true, true};
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / est;
    if (it > 0 && std::abs(est - prev) <= tolerances::kPowerIterationTol * est) return {est, v, true, false};
    prev = est;
  }
  return {prev, v, false, false};
}

}  // namespace

double sym_op_norm(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("sym_op_norm: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 0.0;
  double frob_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tolerances::kSymmetry) {
        throw InvalidArgument("sym_op_norm: matrix not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      frob_sq += m(i, j) * m(i, j);
    }
  }
  if (frob_sq == 0.0) return 0.0;

  // ‖M‖₂ ≥ ‖M‖_F / √n, so an estimate below that means the start vector
  // missed the dominant eigenspace.
  const double lower_bound = std::sqrt(frob_sq / static_cast<double>(n)) * (1.0 - 1e-12);

  PowerOutcome out = power_iterate(m, Vector(n, 1.0 / std::sqrt(static_cast<double>(n))));
  if (out.collapsed || (out.converged && out.estimate < lower_bound)) {
    std::mt19937_64 rng(tolerances::kPowerIterationRestartSeed);
    std::normal_distribution<double> gauss;
    Vector start(n);
    for (double& s : start) s = gauss(rng);
    const double norm = std::sqrt(kernels::squared_norm(start));
    for (double& s : start) s /= norm;
    out = power_iterate(m, std::move(start));
  }
  if (!out.converged) {
    throw NumericalFailure("sym_op_norm: power iteration did not converge in " +
                               std::to_string(tolerances::kPowerIterationMaxIters) + " iterations",
                           out.estimate, std::move(out.vector));
  }
  return out.estimate;
}

}  // namespace sparsekit
