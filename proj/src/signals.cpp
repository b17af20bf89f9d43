#include "sparsekit/signals.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"

namespace sparsekit {

CoefficientProfile geometric_profile(std::size_t sparsity, double alpha) {
  if (sparsity == 0) throw InvalidArgument("geometric_profile: sparsity must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("geometric_profile: alpha must lie in (0, 1]");
  CoefficientProfile p{sparsity, alpha, std::vector<double>(sparsity)};
  if (alpha == 1.0) {
    p.values.assign(sparsity, 1.0 / std::sqrt(static_cast<double>(sparsity)));
    return p;
  }
  double power = 1.0;
  double norm_sq = 0.0;
  for (double& v : p.values) {
    power *= alpha;
    v = power;
    norm_sq += power * power;
  }
  const double beta = 1.0 / std::sqrt(norm_sq);
  for (double& v : p.values) v *= beta;
  return p;
}

IndexList draw_support(std::size_t num_atoms, std::size_t sparsity, Rng& rng) {
  if (sparsity > num_atoms) throw InvalidArgument("draw_support: sparsity exceeds atom count");
  // Partial Fisher-Yates: the first S slots are a uniform ordered S-sample.
  IndexList pool(num_atoms);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < sparsity; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, num_atoms - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(sparsity);
  return pool;
}

IndexList draw_support(std::size_t num_atoms, std::size_t sparsity, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return draw_support(num_atoms, sparsity, rng);
}

std::vector<int> draw_signs(std::size_t count, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<int> signs(count);
  for (int& s : signs) s = coin(rng) ? 1 : -1;
  return signs;
}

std::vector<int> draw_signs(std::size_t count, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return draw_signs(count, rng);
}

SparseSignal synthesize(const Dictionary& dict, const CoefficientProfile& profile, IndexList support,
                        std::vector<int> signs) {
  if (support.size() != profile.sparsity || signs.size() != profile.sparsity ||
      profile.values.size() != profile.sparsity) {
    throw InvalidArgument("synthesize: support, signs and profile must all have length S");
  }
  if (!support.empty()) validate_index_set(support, dict.size());
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidArgument("synthesize: signs must be +1 or -1");
  }
  SparseSignal sig;
  sig.clean.assign(dict.dim(), 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) {
    kernels::axpy(signs[k] * profile.values[k], dict.atom(support[k]), sig.clean);
  }
  sig.support = std::move(support);
  sig.signs = std::move(signs);
  sig.profile = profile;
  return sig;
}

SparseSignal add_noise(SparseSignal signal, double nu, Rng& rng) {
  if (!(nu >= 0.0)) throw InvalidArgument("add_noise: nu must be >= 0");
  Vector noisy = signal.clean;
  if (nu > 0.0) {
    std::normal_distribution<double> gauss(0.0, nu);
    for (double& v : noisy) v += gauss(rng);
  }
  signal.noisy = std::move(noisy);
  signal.noise_level = nu;
  return signal;
}

SparseSignal add_noise(SparseSignal signal, double nu, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return add_noise(std::move(signal), nu, rng);
}

double snr_to_nu(double snr, std::size_t dim) {
  if (!(snr > 0.0)) throw InvalidArgument("snr_to_nu: snr must be > 0");
  if (dim == 0) throw InvalidArgument("snr_to_nu: dimension must be > 0");
  return 1.0 / std::sqrt(static_cast<double>(dim) * snr);
}

// --- fixtures ---------------------------------------------------------------

void write_signal_fixtures(std::span<const SignalFixture> rows, std::ostream& out) {
  out << kSignalFixtureHeader << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.support.size(); ++i) out << (i ? " " : "") << r.support[i];
    out << ',';
    for (std::size_t i = 0; i < r.signs.size(); ++i) out << (i ? " " : "") << (r.signs[i] > 0 ? "+1" : "-1");
    std::ostringstream alpha;
    alpha << std::setprecision(17) << r.alpha;
    out << ',' << alpha.str() << ',' << r.sparsity << ',' << r.seed << '\n';
  }
}

std::vector<SignalFixture> read_signal_fixtures(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSignalFixtureHeader) {
    throw InvalidArgument(std::string("signal fixtures: expected header '") + kSignalFixtureHeader + "'");
  }
  std::vector<SignalFixture> rows;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (fields.size() != 5) throw InvalidArgument("signal fixtures: row " + std::to_string(row_no) + " needs 5 fields");
    SignalFixture r;
    try {
      std::istringstream sup(fields[0]);
      for (std::size_t idx; sup >> idx;) r.support.push_back(idx);
      std::istringstream sg(fields[1]);
      for (int s; sg >> s;) r.signs.push_back(s);
      r.alpha = std::stod(fields[2]);
      r.sparsity = std::stoul(fields[3]);
      r.seed = std::stoull(fields[4]);
    } catch (const std::exception&) {
      throw InvalidArgument("signal fixtures: unparsable row " + std::to_string(row_no));
    }
    if (r.support.size() != r.sparsity || r.signs.size() != r.sparsity) {
      throw InvalidArgument("signal fixtures: row " + std::to_string(row_no) + " lengths disagree with S");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

SparseSignal realise(const Dictionary& dict, const SignalFixture& fixture) {
  return synthesize(dict, geometric_profile(fixture.sparsity, fixture.alpha), fixture.support, fixture.signs);
}

}  // namespace sparsekit
