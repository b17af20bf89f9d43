#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "parallel.hpp"
#include "sparsekit/errors.hpp"
#include "sparsekit/experiments.hpp"
#include "sparsekit/random.hpp"
#include "sparsekit/theory.hpp"

namespace sparsekit::experiments {

namespace {

constexpr std::size_t kTrialsPerBlock = 25;
constexpr std::uint64_t kDictionaryStream = 0xd1c7;
constexpr std::uint64_t kNoiseStream = 0x0015e;

struct Tally {
  std::size_t successes = 0;       // noiseless: full-support hits; noisy: Σ leading-correct
  std::size_t rank_degenerate = 0;
  std::size_t not_converged = 0;
};

struct CellSpec {
  std::size_t sparsity;
  double alpha;
  std::uint64_t seed;
};

std::vector<CellSpec> enumerate_cells(const ExperimentConfig& cfg) {
  std::vector<CellSpec> cells;
  for (std::size_t s : cfg.s_grid) {
    for (double alpha : cfg.alpha_grid) cells.push_back({s, alpha, cell_seed(cfg.master_seed, s, alpha)});
  }
  return cells;
}

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

PhaseGrid grid_header(const ExperimentConfig& cfg, const Dictionary& dict, std::string experiment) {
  PhaseGrid g;
  g.experiment = std::move(experiment);
  g.dict = std::string(dict_label(cfg.dict_kind));
  g.dim = dict.dim();
  g.num_atoms = dict.size();
  g.master_seed = cfg.master_seed;
  g.dict_seed = cfg.dict_kind == DictionaryKind::DiracDCTRandom ? dictionary_seed(cfg.master_seed) : 0;
  return g;
}

// Runs `trial_fn(cell, trial, tallies)` for every trial, blocked for load
// balance, and returns per-cell sums. Sums of integers are order-free, so the
// result does not depend on `jobs`.
template <typename TrialFn>
std::vector<std::vector<Tally>> run_blocks(const std::vector<CellSpec>& cells, std::size_t trials,
                                           std::size_t num_algos, std::size_t jobs, TrialFn trial_fn) {
  const std::size_t blocks_per_cell = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<std::vector<Tally>> block_tallies(cells.size() * blocks_per_cell, std::vector<Tally>(num_algos));
  detail::parallel_for(block_tallies.size(), jobs, [&](std::size_t item) {
    const std::size_t c = item / blocks_per_cell;
    const std::size_t first = (item % blocks_per_cell) * kTrialsPerBlock;
    const std::size_t last = std::min(trials, first + kTrialsPerBlock);
    for (std::size_t t = first; t < last; ++t) trial_fn(cells[c], t, block_tallies[item]);
  });
  std::vector<std::vector<Tally>> per_cell(cells.size(), std::vector<Tally>(num_algos));
  for (std::size_t item = 0; item < block_tallies.size(); ++item) {
    auto& dst = per_cell[item / blocks_per_cell];
    for (std::size_t a = 0; a < num_algos; ++a) {
      dst[a].successes += block_tallies[item][a].successes;
      dst[a].rank_degenerate += block_tallies[item][a].rank_degenerate;
      dst[a].not_converged += block_tallies[item][a].not_converged;
    }
  }
  return per_cell;
}

void add_diagnostics(PhaseGrid& grid, std::string_view algo, const Tally& t) {
  if (t.rank_degenerate) grid.diagnostics[std::string(algo) + ".rank_degenerate"] += t.rank_degenerate;
  if (t.not_converged) grid.diagnostics[std::string(algo) + ".not_converged"] += t.not_converged;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::BP:
      return "BP";
    case Algorithm::OMP:
      return "OMP";
    case Algorithm::THR:
      return "THR";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "bp") return Algorithm::BP;
  if (lower == "omp") return Algorithm::OMP;
  if (lower == "thr" || lower == "thresholding") return Algorithm::THR;
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "' (expected bp, omp or thr)");
}

std::string_view dict_label(DictionaryKind kind) noexcept {
  switch (kind) {
    case DictionaryKind::DiracDCT:
      return "dirac-dct";
    case DictionaryKind::DiracDCTRandom:
      return "dirac-dct-random";
    case DictionaryKind::Custom:
      return "custom";
  }
  return "custom";
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("linear_grid: need at least one step");
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<std::size_t> integer_grid(std::size_t lo, std::size_t hi, std::size_t step) {
  if (step == 0) throw InvalidArgument("integer_grid: step must be positive");
  if (lo > hi) throw InvalidArgument("integer_grid: lower bound above upper bound");
  std::vector<std::size_t> out;
  for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw InvalidArgument("experiment: trials must be >= 1");
  if (cfg.alpha_grid.empty() || cfg.s_grid.empty()) throw InvalidArgument("experiment: empty parameter grid");
  if (cfg.algorithms.empty()) throw InvalidArgument("experiment: no algorithms selected");
  for (double a : cfg.alpha_grid) {
    if (!(a > 0.0 && a <= 1.0)) throw InvalidArgument("experiment: alpha values must lie in (0, 1]");
  }
  const std::size_t dim = cfg.dict_kind == DictionaryKind::Custom && cfg.custom_dictionary
                              ? cfg.custom_dictionary->dim()
                              : cfg.dim;
  for (std::size_t s : cfg.s_grid) {
    if (s < 1 || s > dim) throw InvalidArgument("experiment: S values must lie in [1, d]");
  }
  if (cfg.dict_kind == DictionaryKind::Custom && !cfg.custom_dictionary) {
    throw InvalidArgument("experiment: custom dictionary kind needs a dictionary");
  }
  if (cfg.snr && !(*cfg.snr > 0.0)) throw InvalidArgument("experiment: snr must be > 0");
  std::set<Algorithm> unique(cfg.algorithms.begin(), cfg.algorithms.end());
  if (unique.size() != cfg.algorithms.size()) throw InvalidArgument("experiment: duplicate algorithm");
}

Dictionary make_dictionary(const ExperimentConfig& cfg) {
  switch (cfg.dict_kind) {
    case DictionaryKind::DiracDCT:
      return build_dirac_dct(cfg.dim);
    case DictionaryKind::DiracDCTRandom:
      return build_dirac_dct_random(cfg.dim, dictionary_seed(cfg.master_seed));
    case DictionaryKind::Custom:
      if (!cfg.custom_dictionary) throw InvalidArgument("experiment: custom dictionary missing");
      return *cfg.custom_dictionary;
  }
  throw InvalidArgument("experiment: unknown dictionary kind");
}

std::uint64_t dictionary_seed(std::uint64_t master_seed) noexcept { return derive_seed(master_seed, kDictionaryStream); }

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t sparsity, double alpha) noexcept {
  // α keyed in units of 1e-9 so grids built differently still share streams.
  const auto alpha_key = static_cast<std::uint64_t>(std::llround(alpha * 1e9));
  return derive_seed(derive_seed(master_seed, sparsity), alpha_key);
}

std::uint64_t trial_seed(std::uint64_t cell, std::size_t trial) noexcept { return derive_seed(cell, trial); }

std::uint64_t noise_seed(std::uint64_t trial) noexcept { return derive_seed(trial, kNoiseStream); }

SparseSignal trial_signal(const Dictionary& dict, std::size_t sparsity, double alpha, std::uint64_t seed,
                          std::optional<double> nu) {
  Rng rng = make_rng(seed);
  IndexList support = draw_support(dict.size(), sparsity, rng);
  std::vector<int> signs = draw_signs(sparsity, rng);
  SparseSignal sig = synthesize(dict, geometric_profile(sparsity, alpha), std::move(support), std::move(signs));
  if (nu) sig = add_noise(std::move(sig), *nu, noise_seed(seed));
  return sig;
}

bool same_support(std::span<const std::size_t> found, std::span<const std::size_t> truth) {
  if (found.size() != truth.size()) return false;
  std::vector<std::size_t> a(found.begin(), found.end());
  std::vector<std::size_t> b(truth.begin(), truth.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::size_t leading_correct(std::span<const std::size_t> selections, std::span<const std::size_t> truth) {
  std::size_t count = 0;
  for (std::size_t idx : selections) {
    if (std::find(truth.begin(), truth.end(), idx) == truth.end()) break;
    ++count;
  }
  return count;
}

const CellMetric* PhaseGrid::find(std::size_t sparsity, double alpha, std::string_view algorithm,
                                  std::string_view metric) const {
  for (const auto& c : cells) {
    if (c.sparsity == sparsity && std::abs(c.alpha - alpha) < 1e-9 && c.algorithm == algorithm && c.metric == metric) {
      return &c;
    }
  }
  return nullptr;
}

PhaseGrid run_noiseless(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.snr) throw InvalidArgument("run_noiseless: snr must be absent");
  const Dictionary dict = make_dictionary(cfg);
  const auto cells = enumerate_cells(cfg);
  const auto& algos = cfg.algorithms;

  auto per_cell = run_blocks(cells, cfg.trials, algos.size(), cfg.jobs,
                             [&](const CellSpec& cell, std::size_t t, std::vector<Tally>& tally) {
    const SparseSignal sig = trial_signal(dict, cell.sparsity, cell.alpha, trial_seed(cell.seed, t), std::nullopt);
    for (std::size_t a = 0; a < algos.size(); ++a) {
      bool ok = false;
      switch (algos[a]) {
        case Algorithm::OMP: {
          const SolveResult r = omp(dict, sig.clean, cell.sparsity, kOmpResidualTol);
          if (r.status == SolveStatus::RankDegenerate) ++tally[a].rank_degenerate;
          ok = r.status == SolveStatus::Completed && same_support(r.support, sig.support);
          break;
        }
        case Algorithm::BP: {
          const BpSolution sol = bp_solve(dict, sig.clean);
          if (sol.status == SolveStatus::NotConverged) ++tally[a].not_converged;
          ok = sol.status == SolveStatus::Completed && same_support(bp_support(sol, cell.sparsity), sig.support);
          break;
        }
        case Algorithm::THR: {
          const SolveResult r = thresholding(dict, sig.clean, cell.sparsity);
          if (r.status == SolveStatus::RankDegenerate) ++tally[a].rank_degenerate;
          ok = same_support(r.support, sig.support);
          break;
        }
      }
      tally[a].successes += ok ? 1 : 0;
    }
  });

  PhaseGrid grid = grid_header(cfg, dict, "noiseless");
  const double n = static_cast<double>(cfg.trials);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t a = 0; a < algos.size(); ++a) {
      const auto name = algorithm_name(algos[a]);
      grid.cells.push_back({cells[c].sparsity, cells[c].alpha, std::string(name), "success",
                            static_cast<double>(per_cell[c][a].successes) / n, cfg.trials, cells[c].seed});
      add_diagnostics(grid, name, per_cell[c][a]);
    }
  }
  return grid;
}

PhaseGrid run_noisy(const ExperimentConfig& cfg) {
  validate(cfg);
  if (!cfg.snr) throw InvalidArgument("run_noisy: snr is required");
  if (cfg.algorithms.size() != 1 || cfg.algorithms.front() != Algorithm::OMP) {
    throw InvalidArgument("run_noisy: only OMP is supported");
  }
  const Dictionary dict = make_dictionary(cfg);
  const double nu = std::isinf(*cfg.snr) ? 0.0 : snr_to_nu(*cfg.snr, dict.dim());
  const auto cells = enumerate_cells(cfg);

  auto per_cell = run_blocks(cells, cfg.trials, 1, cfg.jobs,
                             [&](const CellSpec& cell, std::size_t t, std::vector<Tally>& tally) {
    const SparseSignal sig = trial_signal(dict, cell.sparsity, cell.alpha, trial_seed(cell.seed, t), nu);
    const SolveResult r = omp(dict, sig.observed(), cell.sparsity, kOmpResidualTol);
    if (r.status == SolveStatus::RankDegenerate) ++tally[0].rank_degenerate;
    tally[0].successes += leading_correct(r.support, sig.support);
  });

  PhaseGrid grid = grid_header(cfg, dict, "noisy-snr" + format_g(*cfg.snr));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double s = static_cast<double>(cells[c].sparsity);
    grid.cells.push_back({cells[c].sparsity, cells[c].alpha, "OMP", "partial_recovery",
                          static_cast<double>(per_cell[c][0].successes) / (s * static_cast<double>(cfg.trials)),
                          cfg.trials, cells[c].seed});
    const auto profile = geometric_profile(cells[c].sparsity, cells[c].alpha);
    grid.cells.push_back({cells[c].sparsity, cells[c].alpha, "THEORY", "recoverable_fraction",
                          static_cast<double>(theory::recoverable_count(profile, nu, dict.size())) / s, 0,
                          cells[c].seed});
    add_diagnostics(grid, "OMP", per_cell[c][0]);
  }
  return grid;
}

std::vector<OmpTrial> omp_cell_trials(const Dictionary& dict, std::size_t sparsity, double alpha,
                                      std::optional<double> nu, std::size_t trials, std::uint64_t master_seed) {
  const std::uint64_t cell = cell_seed(master_seed, sparsity, alpha);
  std::vector<OmpTrial> out(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const SparseSignal sig = trial_signal(dict, sparsity, alpha, trial_seed(cell, t), nu);
    const SolveResult r = omp(dict, sig.observed(), sparsity, kOmpResidualTol);
    out[t].leading_correct = leading_correct(r.support, sig.support);
    out[t].full_support = r.status == SolveStatus::Completed && same_support(r.support, sig.support);
  }
  return out;
}

double binomial_sigma(double p, std::size_t n) {
  if (n == 0) throw InvalidArgument("binomial_sigma: n must be positive");
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

std::vector<std::string> consistency_flags(const PhaseGrid& grid) {
  std::vector<std::string> flags;
  std::map<std::size_t, std::vector<const CellMetric*>> bp_by_s;
  for (const auto& c : grid.cells) {
    if (c.algorithm == "BP" && c.metric == "success") bp_by_s[c.sparsity].push_back(&c);
  }
  for (const auto& [s, cells] : bp_by_s) {
    if (cells.size() < 2) continue;
    double lo = 1.0, hi = 0.0, mean = 0.0;
    for (const auto* c : cells) {
      lo = std::min(lo, c->value);
      hi = std::max(hi, c->value);
      mean += c->value;
    }
    mean /= static_cast<double>(cells.size());
    const double band = 2.0 * 3.0 * binomial_sigma(mean, cells.front()->trials);
    if (hi - lo > band) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "BP success at S=%zu varies across alpha by %.4g (> pooled 3-sigma band %.4g)", s,
                    hi - lo, band);
      flags.emplace_back(buf);
    }
  }
  return flags;
}

}  // namespace sparsekit::experiments
