#include <algorithm>
#include <cmath>
#include <numeric>

#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"
#include "sparsekit/solvers.hpp"

namespace sparsekit {

std::string_view status_name(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Completed:
      return "Completed";
    case SolveStatus::RankDegenerate:
      return "RankDegenerate";
    case SolveStatus::NotConverged:
      return "NotConverged";
  }
  return "Unknown";
}

IndexList top_magnitudes(std::span<const double> values, std::size_t count) {
  if (count > values.size()) throw InvalidArgument("top_magnitudes: count exceeds length");
  IndexList order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double ma = std::abs(values[a]);
                      const double mb = std::abs(values[b]);
                      return ma > mb || (ma == mb && a < b);
                    });
  order.resize(count);
  return order;
}

SolveResult least_squares_on(const Dictionary& dict, std::span<const double> y, IndexList support) {
  if (y.size() != dict.dim()) throw InvalidArgument("least_squares_on: signal length mismatch");
  SolveResult out;
  out.support = std::move(support);
  if (out.support.empty()) {
    out.residual_norm = std::sqrt(kernels::squared_norm(y));
    return out;
  }
  try {
    const CholeskyState state = cholesky_factor(dict.matrix(), out.support);
    Projection proj = project_residual(state, dict.matrix(), y);
    out.coeffs = std::move(proj.coeffs);
    out.residual_norm = std::sqrt(kernels::squared_norm(proj.residual));
  } catch (const RankDegenerate&) {
    out.status = SolveStatus::RankDegenerate;
    out.residual_norm = std::sqrt(kernels::squared_norm(y));
  }
  return out;
}

}  // namespace sparsekit
