#pragma once

#include <cstddef>
#include <string>
#include <utility>

#include "sparsekit/signals.hpp"

namespace sparsekit::theory {

// Constants of the recovery guarantees. Logarithms are natural throughout.
inline constexpr double kNoiselessThreshold = 1.0 / 13.0;
inline constexpr double kNoisyThreshold = 1.0 / 10.0;
inline constexpr double kNoiseFloorFactor = 14.0;      // c_s ≥ 14 ν √(m log K)
inline constexpr double kRecoverableFactor = 2.0;      // c_i² ≥ 2 ν² log K
inline constexpr double kNoiselessFailureFactor = 2.0; // 2 S K^{1−2m}
inline constexpr double kNoisyFailureFactor = 4.0;     // 4 s K^{1−2m}

/// Coefficient decay c_{i+t}/c_i ≤ 1 − λ/S together with the dictionary
/// constants the guarantees depend on.
struct DecayParams {
  std::size_t t = 1;
  double lambda = 0.0;
  double m = 1.0;
  std::size_t sparsity = 1;
  std::size_t num_atoms = 2;
  double mu = 0.0;
};

/// Throws InvalidArgument unless λ > 0, t ≥ 1, S ≥ 1, m ≥ 1/2, K ≥ 2 and 0 ≤ μ < 1.
void validate(const DecayParams& p);

struct BoundReport {
  std::string label;
  double lhs = 0.0;
  double threshold = 0.0;
  bool strict = false;  // satisfied means lhs < threshold instead of lhs ≤ threshold
  bool satisfied = false;
  double failure_probability = 0.0;
};

/// Full-support recovery in the noiseless model:
/// (t⌈S/λ⌉ + √(m t S log K / λ) + 1) S μ² ≤ 1/13, failing with probability ≤ 2 S K^{1−2m}.
BoundReport noiseless_condition(const DecayParams& p);

/// Recovery of s atoms in the noisy model. First report:
/// (t⌈S/λ⌉ + √(m t S log K / λ) + 1)(μ + 2 s μ²) ≤ 1/10; second: 14 ν √(m log K) ≤ c_s.
/// Both carry the joint failure probability 4 s K^{1−2m}.
std::pair<BoundReport, BoundReport> noisy_conditions(const DecayParams& p, std::size_t s, double nu,
                                                     const CoefficientProfile& c);

/// Deterministic guarantees: 2Sμ < 1 (OMP and BP) and 2Sμ < c_S / c_1 (thresholding).
std::pair<BoundReport, BoundReport> worst_case_conditions(std::size_t sparsity, double mu,
                                                          const CoefficientProfile& c);

/// #{i : c_i² ≥ 2 ν² log K}.
std::size_t recoverable_count(const CoefficientProfile& c, double nu, std::size_t num_atoms);

/// Geometric decay α as (t = 1, λ = S(1 − α)).
DecayParams geometric_to_decay_params(double alpha, std::size_t sparsity, double m, std::size_t num_atoms,
                                      double mu);

/// Same for a step t > 1: c_{i+t}/c_i = α^t, so λ = S(1 − α^t).
DecayParams geometric_to_decay_params(double alpha, std::size_t t, std::size_t sparsity, double m,
                                      std::size_t num_atoms, double mu);

}  // namespace sparsekit::theory
