#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sparsekit/dictionary.hpp"
#include "sparsekit/linops.hpp"

namespace sparsekit {

enum class SolveStatus { Completed, RankDegenerate, NotConverged };

std::string_view status_name(SolveStatus status) noexcept;

struct SolveResult {
  IndexList support;           // selection order (OMP) or decreasing magnitude
  Vector coeffs;               // least-squares coefficients aligned with support
  Vector residual_norms;       // OMP: ‖r_0‖ = ‖y‖, then ‖r_i‖ after each selection
  double residual_norm = 0.0;  // ‖y − Φ_support coeffs‖₂
  SolveStatus status = SolveStatus::Completed;
};

/// Orthogonal Matching Pursuit. Runs until `max_iters` atoms are selected or
/// ‖r‖₂ ≤ residual_tol. Ties in the selection go to the lowest index and
/// already-selected atoms are never reconsidered. A numerically dependent
/// selection stops the run with status RankDegenerate and the partial result.
SolveResult omp(const Dictionary& dict, std::span<const double> y, std::size_t max_iters, double residual_tol);

/// The S atoms with largest |<y, φ_k>| (decreasing, ties to lowest index),
/// with least-squares coefficients on that support.
SolveResult thresholding(const Dictionary& dict, std::span<const double> y, std::size_t sparsity);

struct BpOptions {
  double feas_tol = 1e-8;
  double opt_tol = 1e-6;
  std::size_t max_iters = 50'000;
};

struct BpSolution {
  Vector x_hat;                     // length K
  double primal_feasibility = 0.0;  // ‖Φ x̂ − y‖₂
  double l1_value = 0.0;            // ‖x̂‖₁
  double duality_gap = 0.0;         // ‖x̂‖₁ minus a certified lower bound on the optimum
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::Completed;
};

/// min ‖x‖₁ subject to Φx = y, by the ℓ1 homotopy path from λ = ‖Φᵀy‖∞ to 0.
/// Scaled residuals along the path serve as dual certificates, so the
/// returned duality gap is an upper bound on ‖x̂‖₁ − min‖x‖₁.
BpSolution bp_solve(const Dictionary& dict, std::span<const double> y, const BpOptions& options = {});

/// Indices of the S largest |x̂| (decreasing, ties to lowest index).
IndexList bp_support(const BpSolution& sol, std::size_t sparsity);

/// Largest C(K, S) exhaustive_best accepts.
inline constexpr double kExhaustiveGuard = 1e6;

/// Best S-term approximation by enumerating every S-subset (lexicographic
/// order, first minimum wins). Subsets whose Gram matrix is singular are
/// skipped. Test oracle only.
SolveResult exhaustive_best(const Dictionary& dict, std::span<const double> y, std::size_t sparsity);

/// Least-squares fit on a fixed support, in the order given.
SolveResult least_squares_on(const Dictionary& dict, std::span<const double> y, IndexList support);

/// Indices of the `count` largest |values| in decreasing order, ties to the lowest index.
IndexList top_magnitudes(std::span<const double> values, std::size_t count);

}  // namespace sparsekit
