#include "sparsekit/kernels.hpp"

namespace sparsekit::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = dot(a + j * rows, x, rows);
}

}  // namespace sparsekit::kernels::scalar
