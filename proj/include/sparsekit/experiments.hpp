#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsekit/dictionary.hpp"
#include "sparsekit/signals.hpp"
#include "sparsekit/solvers.hpp"

namespace sparsekit::experiments {

enum class Algorithm { BP, OMP, THR };

std::string_view algorithm_name(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);  // case-insensitive: bp, omp, thr

/// CLI spelling of a dictionary kind: dirac-dct, dirac-dct-random, custom.
std::string_view dict_label(DictionaryKind kind) noexcept;

inline constexpr double kOmpResidualTol = 1e-9;

struct ExperimentConfig {
  std::size_t dim = 128;
  DictionaryKind dict_kind = DictionaryKind::DiracDCT;
  std::vector<double> alpha_grid;
  std::vector<std::size_t> s_grid;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 0;
  std::optional<double> snr;  // absent: noiseless; +inf: noisy path with ν = 0
  std::vector<Algorithm> algorithms{Algorithm::BP, Algorithm::OMP, Algorithm::THR};
  std::size_t jobs = 1;
  std::optional<Dictionary> custom_dictionary;  // required when dict_kind == Custom
};

/// `steps` evenly spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);
/// lo, lo + step, ... up to hi.
std::vector<std::size_t> integer_grid(std::size_t lo, std::size_t hi, std::size_t step);

void validate(const ExperimentConfig& cfg);

/// The dictionary a run uses. Random atoms come from the master seed's
/// dictionary stream, so all cells and trials share one realisation.
Dictionary make_dictionary(const ExperimentConfig& cfg);

// Stream layout: cell = (S, α) keyed by value, trial t below it, noise below
// the trial. Noiseless and noisy runs with one master seed see identical
// supports and signs.
std::uint64_t dictionary_seed(std::uint64_t master_seed) noexcept;
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t sparsity, double alpha) noexcept;
std::uint64_t trial_seed(std::uint64_t cell, std::size_t trial) noexcept;
std::uint64_t noise_seed(std::uint64_t trial) noexcept;

/// Signal of one trial; nu = nullopt skips the noise draw entirely.
SparseSignal trial_signal(const Dictionary& dict, std::size_t sparsity, double alpha, std::uint64_t trial_seed,
                          std::optional<double> nu);

/// Exact set equality, order ignored.
bool same_support(std::span<const std::size_t> found, std::span<const std::size_t> truth);

/// Selections made before the first index outside `truth`.
std::size_t leading_correct(std::span<const std::size_t> selections, std::span<const std::size_t> truth);

struct CellMetric {
  std::size_t sparsity = 0;
  double alpha = 0.0;
  std::string algorithm;  // BP, OMP, THR, or THEORY for analytic rows
  std::string metric;     // success, partial_recovery, recoverable_fraction
  double value = 0.0;
  std::size_t trials = 0;
  std::uint64_t cell_seed = 0;
};

struct PhaseGrid {
  std::string experiment;  // noiseless, or noisy-snr<value>
  std::string dict;        // dict_label of the dictionary kind
  std::size_t dim = 0;
  std::size_t num_atoms = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t dict_seed = 0;
  std::vector<CellMetric> cells;
  /// Per-algorithm tallies of trials whose solver did not complete, e.g.
  /// "OMP.rank_degenerate", "BP.not_converged". Those trials count as failures.
  std::map<std::string, std::size_t> diagnostics;

  const CellMetric* find(std::size_t sparsity, double alpha, std::string_view algorithm,
                         std::string_view metric) const;
};

/// Full-support recovery rates per (S, α, algorithm).
PhaseGrid run_noiseless(const ExperimentConfig& cfg);

/// OMP partial recovery (leading correct atoms / S, averaged) per (S, α), plus
/// the analytic fraction of coefficients above the noise floor.
PhaseGrid run_noisy(const ExperimentConfig& cfg);

/// Per-trial OMP outcome on the noisy (or, with nu = nullopt, clean) signal of
/// each trial in one cell. Exposed for paired comparisons between runs.
struct OmpTrial {
  std::size_t leading_correct = 0;
  bool full_support = false;
};
std::vector<OmpTrial> omp_cell_trials(const Dictionary& dict, std::size_t sparsity, double alpha,
                                      std::optional<double> nu, std::size_t trials, std::uint64_t master_seed);

/// √(p(1−p)/n).
double binomial_sigma(double p, std::size_t n);

/// Warnings for claims that should hold statistically, e.g. BP success varying
/// across α at fixed S by more than the pooled 3σ band. Empty when clean.
std::vector<std::string> consistency_flags(const PhaseGrid& grid);

inline constexpr const char* kCsvHeader = "experiment,dict,d,K,S,alpha,algorithm,metric,value,trials,master_seed";

/// Rows sorted by (S, α, algorithm, metric), floats with 6 significant digits.
void write_csv(const PhaseGrid& grid, std::ostream& out);
void write_csv(const PhaseGrid& grid, const std::string& path);

/// Parses the write_csv format back. Throws InvalidArgument naming the row on malformed input.
PhaseGrid read_csv(std::istream& in);

}  // namespace sparsekit::experiments
