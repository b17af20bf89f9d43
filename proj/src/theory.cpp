#include "sparsekit/theory.hpp"

#include <cmath>

#include "sparsekit/errors.hpp"

namespace sparsekit::theory {

namespace {

// S/λ is often an integer up to rounding (λ = S(1 − α) with α = 0.9 gives
// 10.000000000000002), so snap before taking the ceiling.
double ceil_snapped(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return nearest;
  return std::ceil(x);
}

double path_factor(const DecayParams& p) {
  const double t = static_cast<double>(p.t);
  const double s = static_cast<double>(p.sparsity);
  const double log_k = std::log(static_cast<double>(p.num_atoms));
  return t * ceil_snapped(s / p.lambda) + std::sqrt(p.m * t * s * log_k / p.lambda) + 1.0;
}

double failure(double factor, std::size_t count, const DecayParams& p) {
  return factor * static_cast<double>(count) * std::pow(static_cast<double>(p.num_atoms), 1.0 - 2.0 * p.m);
}

BoundReport make(std::string label, double lhs, double threshold, bool strict, double failure_probability) {
  BoundReport r{std::move(label), lhs, threshold, strict, false, failure_probability};
  r.satisfied = strict ? lhs < threshold : lhs <= threshold;
  return r;
}

}  // namespace

void validate(const DecayParams& p) {
  if (!(p.lambda > 0.0)) throw InvalidArgument("DecayParams: lambda must be > 0");
  if (p.t < 1) throw InvalidArgument("DecayParams: t must be >= 1");
  if (p.sparsity < 1) throw InvalidArgument("DecayParams: S must be >= 1");
  if (!(p.m >= 0.5)) throw InvalidArgument("DecayParams: m must be >= 1/2");
  if (p.num_atoms < 2) throw InvalidArgument("DecayParams: K must be >= 2");
  if (!(p.mu >= 0.0 && p.mu < 1.0)) throw InvalidArgument("DecayParams: mu must lie in [0, 1)");
}

BoundReport noiseless_condition(const DecayParams& p) {
  validate(p);
  const double s = static_cast<double>(p.sparsity);
  return make("noiseless_full_support", path_factor(p) * s * p.mu * p.mu, kNoiselessThreshold, false,
              failure(kNoiselessFailureFactor, p.sparsity, p));
}

std::pair<BoundReport, BoundReport> noisy_conditions(const DecayParams& p, std::size_t s, double nu,
                                                     const CoefficientProfile& c) {
  validate(p);
  if (s < 1 || s > p.sparsity) throw InvalidArgument("noisy_conditions: need 1 <= s <= S");
  if (!(nu >= 0.0)) throw InvalidArgument("noisy_conditions: nu must be >= 0");
  if (c.values.size() < s) throw InvalidArgument("noisy_conditions: profile shorter than s");
  const double prob = failure(kNoisyFailureFactor, s, p);
  const double sd = static_cast<double>(s);
  BoundReport coherence_part =
      make("noisy_coherence", path_factor(p) * (p.mu + 2.0 * sd * p.mu * p.mu), kNoisyThreshold, false, prob);
  const double floor = kNoiseFloorFactor * nu * std::sqrt(p.m * std::log(static_cast<double>(p.num_atoms)));
  BoundReport noise_part = make("noisy_coefficient_floor", floor, c.values[s - 1], false, prob);
  return {coherence_part, noise_part};
}

std::pair<BoundReport, BoundReport> worst_case_conditions(std::size_t sparsity, double mu,
                                                          const CoefficientProfile& c) {
  if (sparsity < 1) throw InvalidArgument("worst_case_conditions: S must be >= 1");
  if (c.values.size() < sparsity) throw InvalidArgument("worst_case_conditions: profile shorter than S");
  const double lhs = 2.0 * static_cast<double>(sparsity) * mu;
  return {make("worst_case_omp_bp", lhs, 1.0, true, 0.0),
          make("worst_case_thresholding", lhs, c.values[sparsity - 1] / c.values[0], true, 0.0)};
}

std::size_t recoverable_count(const CoefficientProfile& c, double nu, std::size_t num_atoms) {
  if (!(nu >= 0.0)) throw InvalidArgument("recoverable_count: nu must be >= 0");
  const double floor = kRecoverableFactor * nu * nu * std::log(static_cast<double>(num_atoms));
  std::size_t count = 0;
  for (double v : c.values) count += (v * v >= floor) ? 1 : 0;
  return count;
}

DecayParams geometric_to_decay_params(double alpha, std::size_t sparsity, double m, std::size_t num_atoms,
                                      double mu) {
  return geometric_to_decay_params(alpha, 1, sparsity, m, num_atoms, mu);
}

DecayParams geometric_to_decay_params(double alpha, std::size_t t, std::size_t sparsity, double m,
                                      std::size_t num_atoms, double mu) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("geometric_to_decay_params: alpha must lie in (0, 1); no decay means no average-case bound");
  }
  if (t < 1) throw InvalidArgument("geometric_to_decay_params: t must be >= 1");
  DecayParams p{t, static_cast<double>(sparsity) * (1.0 - std::pow(alpha, static_cast<double>(t))), m, sparsity,
                num_atoms, mu};
  validate(p);
  return p;
}

}  // namespace sparsekit::theory
