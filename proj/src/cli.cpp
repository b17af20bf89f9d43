#include "sparsekit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <thread>

#include "sparsekit/errors.hpp"
#include "sparsekit/experiments.hpp"
#include "sparsekit/theory.hpp"

namespace sparsekit {

namespace {

namespace ex = experiments;

struct DictOptions {
  std::size_t d = 128;
  std::string dict = "dirac-dct";
  std::string dict_csv;
  std::optional<std::uint64_t> seed;
};

struct GridOptions {
  double alpha_min = 0.75;
  double alpha_max = 1.0;
  std::size_t alpha_steps = 11;
  std::size_t s_min = 2;
  std::size_t s_max = 48;
  std::size_t s_step = 2;
  std::size_t trials = 1000;
  std::string out;
  std::vector<std::string> algorithms;
  std::optional<double> snr;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
};

void add_dict_options(CLI::App* app, DictOptions& o) {
  app->add_option("--d", o.d, "Signal dimension (even)")->capture_default_str();
  app->add_option("--dict", o.dict, "Dictionary")
      ->check(CLI::IsMember({"dirac-dct", "dirac-dct-random"}))
      ->capture_default_str();
  app->add_option("--dict-csv", o.dict_csv, "Load a custom dictionary from CSV instead of --dict");
}

void add_grid_options(CLI::App* app, GridOptions& g) {
  app->add_option("--alpha-min", g.alpha_min, "Smallest decay parameter")->capture_default_str();
  app->add_option("--alpha-max", g.alpha_max, "Largest decay parameter")->capture_default_str();
  app->add_option("--alpha-steps", g.alpha_steps, "Number of alpha values")->capture_default_str();
  app->add_option("--s-min", g.s_min, "Smallest sparsity")->capture_default_str();
  app->add_option("--s-max", g.s_max, "Largest sparsity")->capture_default_str();
  app->add_option("--s-step", g.s_step, "Sparsity step")->capture_default_str();
  app->add_option("--trials", g.trials, "Trials per cell")->capture_default_str();
  app->add_option("--out", g.out, "CSV output path (stdout if omitted)");
  app->add_option("--algorithms", g.algorithms, "Comma-separated subset of bp,omp,thr")->delimiter(',');
  app->add_option("--jobs", g.jobs, "Worker threads")->capture_default_str();
}

Dictionary load_dictionary(const DictOptions& o) {
  if (!o.dict_csv.empty()) return read_dictionary_csv(o.dict_csv);
  if (o.dict == "dirac-dct-random") {
    if (!o.seed) throw InvalidArgument("--dict dirac-dct-random needs --seed");
    return build_dirac_dct_random(o.d, *o.seed);
  }
  return build_dirac_dct(o.d);
}

ex::ExperimentConfig make_config(const DictOptions& o, const GridOptions& g, bool noisy) {
  ex::ExperimentConfig cfg;
  cfg.master_seed = *o.seed;
  if (!o.dict_csv.empty()) {
    cfg.dict_kind = DictionaryKind::Custom;
    cfg.custom_dictionary = read_dictionary_csv(o.dict_csv);
    cfg.dim = cfg.custom_dictionary->dim();
  } else {
    cfg.dict_kind = o.dict == "dirac-dct-random" ? DictionaryKind::DiracDCTRandom : DictionaryKind::DiracDCT;
    cfg.dim = o.d;
  }
  if (g.alpha_min > g.alpha_max) throw InvalidArgument("--alpha-min exceeds --alpha-max");
  cfg.alpha_grid = ex::linear_grid(g.alpha_min, g.alpha_max, g.alpha_steps);
  cfg.s_grid = ex::integer_grid(g.s_min, g.s_max, g.s_step);
  cfg.trials = g.trials;
  cfg.jobs = std::max<std::size_t>(1, g.jobs);
  cfg.snr = g.snr;
  if (g.algorithms.empty()) {
    cfg.algorithms = noisy ? std::vector{ex::Algorithm::OMP}
                           : std::vector{ex::Algorithm::BP, ex::Algorithm::OMP, ex::Algorithm::THR};
  } else {
    cfg.algorithms.clear();
    for (const auto& name : g.algorithms) cfg.algorithms.push_back(ex::parse_algorithm(name));
    std::sort(cfg.algorithms.begin(), cfg.algorithms.end());
  }
  if (noisy && (cfg.algorithms.size() != 1 || cfg.algorithms.front() != ex::Algorithm::OMP)) {
    throw InvalidArgument("noisy runs support only --algorithms omp");
  }
  ex::validate(cfg);
  return cfg;
}

void emit(const ex::PhaseGrid& grid, const GridOptions& g, std::ostream& out, std::ostream& err) {
  if (g.out.empty()) {
    ex::write_csv(grid, out);
  } else {
    ex::write_csv(grid, g.out);
  }
  for (const auto& [key, count] : grid.diagnostics) err << "diagnostic: " << key << " = " << count << '\n';
  for (const auto& flag : ex::consistency_flags(grid)) err << "flag: " << flag << '\n';
}

std::string num(double v, const char* fmt = "%.6g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void print_report(std::ostream& out, const theory::BoundReport& r) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-26s %14s %2s %-14s %-9s %s\n", r.label.c_str(), num(r.lhs).c_str(),
                r.strict ? "<" : "<=", num(r.threshold).c_str(), r.satisfied ? "yes" : "no",
                num(r.failure_probability).c_str());
  out << buf;
}

struct BoundsOptions {
  std::size_t sparsity = 0;
  double alpha = 1.0;
  double m = 1.0;
  std::size_t t = 1;
  std::optional<double> snr;
  std::optional<std::size_t> depth;
};

void run_bounds(const DictOptions& o, const BoundsOptions& b, std::ostream& out) {
  const Dictionary dict = load_dictionary(o);
  const double mu = coherence(dict);
  const std::size_t k = dict.size();
  const auto profile = geometric_profile(b.sparsity, b.alpha);
  const double nu = b.snr ? snr_to_nu(*b.snr, dict.dim()) : 0.0;

  out << "d=" << dict.dim() << " K=" << k << " mu=" << num(mu) << " S=" << b.sparsity << " alpha=" << num(b.alpha)
      << " t=" << b.t << " m=" << num(b.m);
  if (b.snr) out << " snr=" << num(*b.snr) << " nu=" << num(nu);
  out << '\n';

  char head[200];
  std::snprintf(head, sizeof head, "%-26s %14s %2s %-14s %-9s %s\n", "condition", "lhs", "", "threshold", "satisfied",
                "failure_probability");
  out << head;
  const auto [omp_bp, thr] = theory::worst_case_conditions(b.sparsity, mu, profile);
  print_report(out, omp_bp);
  print_report(out, thr);

  if (b.alpha < 1.0) {
    const auto params = theory::geometric_to_decay_params(b.alpha, b.t, b.sparsity, b.m, k, mu);
    print_report(out, theory::noiseless_condition(params));
    if (b.snr) {
      const std::size_t recoverable = theory::recoverable_count(profile, nu, k);
      const std::size_t s = b.depth.value_or(recoverable);
      if (s >= 1) {
        const auto [coh, floor] = theory::noisy_conditions(params, s, nu, profile);
        print_report(out, coh);
        print_report(out, floor);
      } else {
        out << "noisy conditions: no coefficient above the noise floor (s = 0)\n";
      }
    }
  } else {
    out << "average-case conditions: not applicable without decay (alpha = 1)\n";
  }
  if (b.snr) out << "recoverable_count " << theory::recoverable_count(profile, nu, k) << " of " << b.sparsity << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse recovery experiments: OMP, Basis Pursuit and thresholding", "sparsekit"};
  app.require_subcommand(1);

  DictOptions noiseless_dict, noisy_dict, coherence_dict, bounds_dict;
  GridOptions noiseless_grid, noisy_grid;
  BoundsOptions bounds;

  auto* noiseless = app.add_subcommand("noiseless", "Full-support recovery phase diagram");
  add_dict_options(noiseless, noiseless_dict);
  add_grid_options(noiseless, noiseless_grid);
  noiseless->add_option("--seed", noiseless_dict.seed, "Master seed")->required();

  auto* noisy = app.add_subcommand("noisy", "OMP partial recovery under Gaussian noise");
  add_dict_options(noisy, noisy_dict);
  add_grid_options(noisy, noisy_grid);
  noisy->add_option("--seed", noisy_dict.seed, "Master seed")->required();
  noisy->add_option("--snr", noisy_grid.snr, "Signal to noise ratio 1/(d nu^2)")->required();

  auto* coh = app.add_subcommand("coherence", "Print the dictionary coherence");
  add_dict_options(coh, coherence_dict);
  coh->add_option("--seed", coherence_dict.seed, "Seed for random atoms");

  auto* bnd = app.add_subcommand("bounds", "Evaluate the recovery conditions");
  add_dict_options(bnd, bounds_dict);
  bnd->add_option("--seed", bounds_dict.seed, "Seed for random atoms");
  bnd->add_option("--S", bounds.sparsity, "Sparsity level")->required()->check(CLI::PositiveNumber);
  bnd->add_option("--alpha", bounds.alpha, "Geometric decay parameter in (0, 1]")->required();
  bnd->add_option("--m", bounds.m, "Probability exponent")->capture_default_str();
  bnd->add_option("--t", bounds.t, "Decay step")->capture_default_str();
  bnd->add_option("--snr", bounds.snr, "Signal to noise ratio (enables the noisy conditions)");
  bnd->add_option("--depth", bounds.depth, "Recovery depth s for the noisy conditions (default: recoverable count)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*noiseless) {
      emit(ex::run_noiseless(make_config(noiseless_dict, noiseless_grid, false)), noiseless_grid, out, err);
    } else if (*noisy) {
      emit(ex::run_noisy(make_config(noisy_dict, noisy_grid, true)), noisy_grid, out, err);
    } else if (*coh) {
      out << num(coherence(load_dictionary(coherence_dict))) << '\n';
    } else if (*bnd) {
      run_bounds(bounds_dict, bounds, out);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace sparsekit
