// Basis Pursuit through the ℓ1 homotopy (LARS with sign-change drops).
//
// Follows the solution path of min ½‖y − Φx‖² + λ‖x‖₁ from λ = ‖Φᵀy‖∞ down
// to λ = 0, where it coincides with min ‖x‖₁ s.t. Φx = y. Along each segment
// the active coefficients move in direction (Φ_IᵀΦ_I)⁻¹ sgn, and the segment
// ends when an inactive correlation reaches ±λ (add) or an active coefficient
// crosses zero (drop).

#include <cmath>
#include <limits>

#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"
#include "sparsekit/solvers.hpp"

namespace sparsekit {

namespace {

constexpr double kDenominatorFloor = 1e-12;
// A breakpoint within this (relative) distance of λ, or one that would leave
// λ below kTerminalFloor·λ₀, counts as reaching λ = 0. Near the end every
// inactive correlation tends to zero together with λ, so breakpoints there
// are roundoff.
constexpr double kTerminalSlack = 1e-10;
constexpr double kTerminalFloor = 1e-10;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

enum class Event { Finish, Add, Drop };

}  // namespace

BpSolution bp_solve(const Dictionary& dict, std::span<const double> y, const BpOptions& options) {
  const auto& a = dict.matrix();
  const std::size_t d = dict.dim();
  const std::size_t k_atoms = dict.size();
  if (y.size() != d) throw InvalidArgument("bp_solve: signal length mismatch");
  const auto& kern = kernels::active();

  BpSolution sol;
  sol.x_hat.assign(k_atoms, 0.0);
  Vector corr(k_atoms);
  kern.gemv_t(a.data().data(), d, k_atoms, y.data(), corr.data());

  IndexList active;
  Vector signs;
  std::vector<bool> is_active(k_atoms, false);
  CholeskyState chol;
  Vector direction_atoms(d);  // u = Φ_I dir
  Vector direction_corr(k_atoms);  // a = Φᵀ u
  Vector residual(d);

  // Any v gives the lower bound yᵀv / max(1, ‖Φᵀv‖∞) ≤ min ‖x‖₁. Along the
  // path v = r/λ is feasible up to roundoff and its bound tends to the
  // optimum, so the best one seen is kept.
  double best_lower = 0.0;
  auto refresh_correlations = [&] {
    residual.assign(y.begin(), y.end());
    for (std::size_t idx : active) {
      if (sol.x_hat[idx] != 0.0) kern.axpy(-sol.x_hat[idx], a.col(idx).data(), residual.data(), d);
    }
    kern.gemv_t(a.data().data(), d, k_atoms, residual.data(), corr.data());
  };
  auto record_residual_bound = [&](double lam) {
    if (lam <= 0.0) return;
    double corr_inf = 0.0;
    for (double c : corr) corr_inf = std::max(corr_inf, std::abs(c));
    const double bound = kern.dot(y.data(), residual.data(), d) / std::max(lam, corr_inf);
    best_lower = std::max(best_lower, bound);
  };

  double lambda = 0.0;
  std::size_t first = 0;
  for (std::size_t k = 0; k < k_atoms; ++k) {
    if (std::abs(corr[k]) > lambda) {
      lambda = std::abs(corr[k]);
      first = k;
    }
  }

  const double lambda_floor = kTerminalFloor * lambda;
  bool finished = lambda == 0.0;
  if (!finished) {
    chol.append(a, first);
    active.push_back(first);
    signs.push_back(corr[first] > 0.0 ? 1.0 : -1.0);
    is_active[first] = true;
  }

  std::size_t last_dropped = kNone;
  bool degenerate = false;
  while (!finished && sol.iterations < options.max_iters) {
    ++sol.iterations;
    const Vector dir = chol.solve(signs);
    std::fill(direction_atoms.begin(), direction_atoms.end(), 0.0);
    for (std::size_t i = 0; i < active.size(); ++i) kern.axpy(dir[i], a.col(active[i]).data(), direction_atoms.data(), d);
    kern.gemv_t(a.data().data(), d, k_atoms, direction_atoms.data(), direction_corr.data());

    double gamma = lambda;
    Event event = Event::Finish;
    std::size_t which = kNone;
    const double cutoff = std::min(lambda * (1.0 - kTerminalSlack), lambda - lambda_floor);
    // With d active atoms every inactive correlation is proportional to λ,
    // so it cannot reach ±λ; only drops or the finish remain.
    const bool full_rank = active.size() >= d;
    for (std::size_t k = 0; k < k_atoms && !full_rank; ++k) {
      if (is_active[k]) continue;
      const double ak = direction_corr[k];
      const double ck = corr[k];
      // A just-dropped atom sits on the bound it left from; it may only
      // re-enter through the opposite one.
      const bool upper_only = k == last_dropped && ck < 0.0;
      const bool lower_only = k == last_dropped && ck > 0.0;
      if (!lower_only && 1.0 - ak > kDenominatorFloor) {
        const double g = std::max(0.0, (lambda - ck) / (1.0 - ak));
        if (g < gamma && g < cutoff) {
          gamma = g;
          event = Event::Add;
          which = k;
        }
      }
      if (!upper_only && 1.0 + ak > kDenominatorFloor) {
        const double g = std::max(0.0, (lambda + ck) / (1.0 + ak));
        if (g < gamma && g < cutoff) {
          gamma = g;
          event = Event::Add;
          which = k;
        }
      }
    }
    for (std::size_t i = 0; i < active.size(); ++i) {
      const double xi = sol.x_hat[active[i]];
      if (xi == 0.0 || dir[i] == 0.0) continue;
      const double g = -xi / dir[i];
      if (g > 0.0 && g < gamma && g < cutoff) {
        gamma = g;
        event = Event::Drop;
        which = i;
      }
    }

    for (std::size_t i = 0; i < active.size(); ++i) sol.x_hat[active[i]] += gamma * dir[i];
    kern.axpy(-gamma, direction_corr.data(), corr.data(), k_atoms);
    lambda -= gamma;

    if (event == Event::Finish) {
      lambda = 0.0;
      finished = true;
      break;
    }
    if (event == Event::Drop) {
      const std::size_t idx = active[which];
      sol.x_hat[idx] = 0.0;
      is_active[idx] = false;
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(which));
      signs.erase(signs.begin() + static_cast<std::ptrdiff_t>(which));
      chol = cholesky_factor(a, active);
      last_dropped = idx;
    } else {
      try {
        chol.append(a, which);
      } catch (const RankDegenerate&) {
        degenerate = true;
        break;
      }
      active.push_back(which);
      signs.push_back(corr[which] > 0.0 ? 1.0 : -1.0);
      is_active[which] = true;
      last_dropped = kNone;
    }
    refresh_correlations();
    record_residual_bound(lambda);
  }

  // At λ = 0 the active coefficients solve Φ_I x_I = y exactly; re-solving
  // that system removes the drift accumulated along the path.
  if (finished && !active.empty()) {
    refresh_correlations();
    const double before = kernels::squared_norm(residual);
    const Projection proj = project_residual(chol, a, y);
    if (kernels::squared_norm(proj.residual) < before) {
      for (std::size_t i = 0; i < active.size(); ++i) sol.x_hat[active[i]] = proj.coeffs[i];
    }
  }
  refresh_correlations();
  sol.primal_feasibility = std::sqrt(kernels::squared_norm(residual));
  sol.l1_value = 0.0;
  for (double v : sol.x_hat) sol.l1_value += std::abs(v);

  // The λ → 0 limit of r/λ is v = Φ_I (Φ_IᵀΦ_I)⁻¹ sgn.
  if (finished && !active.empty()) {
    const Vector dir = chol.solve(signs);
    std::fill(direction_atoms.begin(), direction_atoms.end(), 0.0);
    for (std::size_t i = 0; i < active.size(); ++i) kern.axpy(dir[i], a.col(active[i]).data(), direction_atoms.data(), d);
    kern.gemv_t(a.data().data(), d, k_atoms, direction_atoms.data(), direction_corr.data());
    double dual_inf = 0.0;
    for (double v : direction_corr) dual_inf = std::max(dual_inf, std::abs(v));
    const double lower = kern.dot(y.data(), direction_atoms.data(), d) / std::max(1.0, dual_inf);
    sol.duality_gap = std::max(0.0, sol.l1_value - std::max(lower, best_lower));
  } else if (!finished) {
    sol.duality_gap = std::numeric_limits<double>::infinity();
  }

  const bool ok = finished && !degenerate && sol.primal_feasibility <= options.feas_tol &&
                  sol.duality_gap <= options.opt_tol;
  sol.status = ok ? SolveStatus::Completed : SolveStatus::NotConverged;
  return sol;
}

IndexList bp_support(const BpSolution& sol, std::size_t sparsity) { return top_magnitudes(sol.x_hat, sparsity); }

}  // namespace sparsekit
