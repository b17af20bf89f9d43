#pragma once

// Data-parallel inner loops shared by every solver. Each kernel has a scalar
// reference implementation and SIMD variants; the variant is picked once at
// startup from the host CPU features and can be overridden for testing.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace sparsekit::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[j] = <A[:, j], x> for a column-major rows x cols matrix A
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* out);
};

/// ISAs compiled into this binary and supported by the running CPU, Scalar first.
std::vector<Isa> supported_isas();

/// Table for a specific ISA; throws InvalidArgument if it is not supported here.
const KernelTable& table_for(Isa isa);

/// Table currently used by the library.
const KernelTable& active();

/// Pin the library to one ISA (tests, benchmarks). Thread-safe, but changing it
/// while solves run on other threads mixes rounding behaviour between them.
void force_isa(Isa isa);

/// Return to the automatically detected best ISA.
void reset_isa();

// Convenience wrappers over active().

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* out);
}  // namespace scalar

}  // namespace sparsekit::kernels
