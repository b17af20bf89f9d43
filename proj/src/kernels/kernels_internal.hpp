#pragma once

#include <cstddef>

namespace sparsekit::kernels {

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* out);
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* out);
}  // namespace neon

}  // namespace sparsekit::kernels
