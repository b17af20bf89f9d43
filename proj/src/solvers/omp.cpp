#include <cmath>

#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"
#include "sparsekit/solvers.hpp"

namespace sparsekit {

SolveResult omp(const Dictionary& dict, std::span<const double> y, std::size_t max_iters, double residual_tol) {
  const auto& a = dict.matrix();
  if (y.size() != dict.dim()) throw InvalidArgument("omp: signal length mismatch");
  if (max_iters > dict.dim()) throw InvalidArgument("omp: max_iters exceeds the signal dimension");
  if (!(residual_tol >= 0.0)) throw InvalidArgument("omp: residual_tol must be >= 0");

  SolveResult out;
  CholeskyState state;
  Vector residual(y.begin(), y.end());
  Vector corr(dict.size());
  std::vector<bool> taken(dict.size(), false);
  double norm = std::sqrt(kernels::squared_norm(residual));
  out.residual_norms.push_back(norm);

  for (std::size_t it = 0; it < max_iters && norm > residual_tol; ++it) {
    kernels::active().gemv_t(a.data().data(), a.rows(), a.cols(), residual.data(), corr.data());
    std::size_t best = dict.size();
    double best_mag = -1.0;
    for (std::size_t k = 0; k < corr.size(); ++k) {
      if (taken[k]) continue;
      const double mag = std::abs(corr[k]);
      if (mag > best_mag) {
        best_mag = mag;
        best = k;
      }
    }
    try {
      state.append(a, best);
    } catch (const RankDegenerate&) {
      out.status = SolveStatus::RankDegenerate;
      break;
    }
    taken[best] = true;
    Projection proj = project_residual(state, a, y);
    residual = std::move(proj.residual);
    out.coeffs = std::move(proj.coeffs);
    norm = std::sqrt(kernels::squared_norm(residual));
    out.residual_norms.push_back(norm);
  }
  out.support = state.selected();
  out.residual_norm = norm;
  return out;
}

SolveResult thresholding(const Dictionary& dict, std::span<const double> y, std::size_t sparsity) {
  if (y.size() != dict.dim()) throw InvalidArgument("thresholding: signal length mismatch");
  if (sparsity > dict.size()) throw InvalidArgument("thresholding: sparsity exceeds atom count");
  const Vector corr = dict.matrix().transpose_times(y);
  return least_squares_on(dict, y, top_magnitudes(corr, sparsity));
}

}  // namespace sparsekit
