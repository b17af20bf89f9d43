#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"

using namespace sparsekit;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

// Reordered summation changes the rounding; this bounds it by n·eps·Σ|a_i b_i|.
double dot_slack(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] * b[i]);
  return 4.0 * static_cast<double>(a.size() + 1) * 2.2e-16 * s + 1e-300;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar is always available and listed first") {
    const auto isas = kernels::supported_isas();
    REQUIRE(!isas.empty());
    CHECK(isas.front() == kernels::Isa::Scalar);
    CHECK(kernels::table_for(kernels::Isa::Scalar).isa == kernels::Isa::Scalar);
  }

  TEST_CASE("unsupported isa is rejected") {
    const auto isas = kernels::supported_isas();
    for (auto isa : {kernels::Isa::Avx2, kernels::Isa::Neon}) {
      if (std::find(isas.begin(), isas.end(), isa) == isas.end()) {
        CHECK_THROWS_AS(kernels::table_for(isa), InvalidArgument);
      }
    }
  }

  TEST_CASE("every variant agrees with the scalar reference") {
    for (auto isa : kernels::supported_isas()) {
      CAPTURE(kernels::isa_name(isa));
      const auto& t = kernels::table_for(isa);
      // lengths around the vector widths and unroll factors
      for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 31u, 64u, 127u, 128u, 1000u}) {
        const auto a = noise(n, 11 + n);
        const auto b = noise(n, 97 + n);
        CHECK(std::abs(t.dot(a.data(), b.data(), n) - kernels::scalar::dot(a.data(), b.data(), n)) <=
              dot_slack(a, b));

        auto y1 = b;
        auto y2 = b;
        t.axpy(-0.37, a.data(), y1.data(), n);
        kernels::scalar::axpy(-0.37, a.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);
      }

      for (std::size_t rows : {1u, 5u, 8u, 13u, 128u}) {
        for (std::size_t cols : {1u, 2u, 3u, 4u, 5u, 9u, 256u}) {
          const auto m = noise(rows * cols, rows * 1000 + cols);
          const auto x = noise(rows, 5);
          std::vector<double> o1(cols), o2(cols);
          t.gemv_t(m.data(), rows, cols, x.data(), o1.data());
          kernels::scalar::gemv_t(m.data(), rows, cols, x.data(), o2.data());
          for (std::size_t j = 0; j < cols; ++j) {
            const std::vector<double> column(m.begin() + static_cast<std::ptrdiff_t>(j * rows),
                                             m.begin() + static_cast<std::ptrdiff_t>((j + 1) * rows));
            CHECK(std::abs(o1[j] - o2[j]) <= dot_slack(column, x));
          }
        }
      }
    }
  }

  TEST_CASE("force and reset switch the active table") {
    for (auto isa : kernels::supported_isas()) {
      kernels::force_isa(isa);
      CHECK(kernels::active().isa == isa);
    }
    kernels::reset_isa();
    CHECK(kernels::active().isa == kernels::supported_isas().back());
  }
}
