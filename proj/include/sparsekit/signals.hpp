#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sparsekit/dictionary.hpp"
#include "sparsekit/random.hpp"

namespace sparsekit {

/// Unit-norm, non-increasing geometric coefficient sequence c_i = β·α^i, i = 1..S.
struct CoefficientProfile {
  std::size_t sparsity = 0;
  double alpha = 1.0;
  std::vector<double> values;
};

CoefficientProfile geometric_profile(std::size_t sparsity, double alpha);

/// y = Σ_k sign_k · c_k · φ_{support_k}, optionally with additive noise.
struct SparseSignal {
  IndexList support;
  std::vector<int> signs;
  CoefficientProfile profile;
  Vector clean;
  std::optional<Vector> noisy;
  double noise_level = 0.0;  // ν

  /// The vector solvers should see: noisy if present, else clean.
  const Vector& observed() const noexcept { return noisy ? *noisy : clean; }
};

/// Uniformly random ordered selection of `sparsity` distinct indices from [0, K).
IndexList draw_support(std::size_t num_atoms, std::size_t sparsity, Rng& rng);
IndexList draw_support(std::size_t num_atoms, std::size_t sparsity, std::uint64_t seed);

/// i.i.d. Rademacher signs.
std::vector<int> draw_signs(std::size_t count, Rng& rng);
std::vector<int> draw_signs(std::size_t count, std::uint64_t seed);

SparseSignal synthesize(const Dictionary& dict, const CoefficientProfile& profile, IndexList support,
                        std::vector<int> signs);

/// Adds i.i.d. N(0, ν²) noise to every coordinate of the clean signal.
SparseSignal add_noise(SparseSignal signal, double nu, Rng& rng);
SparseSignal add_noise(SparseSignal signal, double nu, std::uint64_t seed);

/// ν such that SNR = 1 / (d ν²).
double snr_to_nu(double snr, std::size_t dim);

// Fixture rows for cross-implementation regression tests. Header
// `support,signs,alpha,S,seed`; support and signs are space-separated lists,
// e.g. `17 3 250,+1 -1 +1,0.9,3,42`. The clean vector is rebuilt from the
// dictionary on read.
struct SignalFixture {
  IndexList support;
  std::vector<int> signs;
  double alpha = 1.0;
  std::size_t sparsity = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kSignalFixtureHeader = "support,signs,alpha,S,seed";

void write_signal_fixtures(std::span<const SignalFixture> rows, std::ostream& out);
std::vector<SignalFixture> read_signal_fixtures(std::istream& in);
SparseSignal realise(const Dictionary& dict, const SignalFixture& fixture);

}  // namespace sparsekit
