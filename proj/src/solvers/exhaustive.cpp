#include <cmath>

#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"
#include "sparsekit/solvers.hpp"

namespace sparsekit {

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return out;
}

}  // namespace

SolveResult exhaustive_best(const Dictionary& dict, std::span<const double> y, std::size_t sparsity) {
  const std::size_t k = dict.size();
  if (y.size() != dict.dim()) throw InvalidArgument("exhaustive_best: signal length mismatch");
  if (sparsity > k) throw InvalidArgument("exhaustive_best: sparsity exceeds atom count");
  if (binomial(k, sparsity) > kExhaustiveGuard) {
    throw InvalidArgument("exhaustive_best: C(K, S) exceeds the enumeration guard");
  }
  if (sparsity == 0) return least_squares_on(dict, y, {});

  IndexList subset(sparsity);
  for (std::size_t i = 0; i < sparsity; ++i) subset[i] = i;
  SolveResult best;
  bool have_best = false;
  while (true) {
    SolveResult candidate = least_squares_on(dict, y, subset);
    if (candidate.status == SolveStatus::Completed && (!have_best || candidate.residual_norm < best.residual_norm)) {
      best = std::move(candidate);
      have_best = true;
    }
    // Next subset in lexicographic order.
    std::size_t i = sparsity;
    while (i > 0 && subset[i - 1] == k - sparsity + (i - 1)) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < sparsity; ++j) subset[j] = subset[j - 1] + 1;
  }
  if (!have_best) {
    best = least_squares_on(dict, y, {});
    best.status = SolveStatus::RankDegenerate;
  }
  return best;
}

}  // namespace sparsekit
