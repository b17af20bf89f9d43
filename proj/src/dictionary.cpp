#include "sparsekit/dictionary.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"
#include "sparsekit/random.hpp"

namespace sparsekit {

std::string_view kind_name(DictionaryKind kind) noexcept {
  switch (kind) {
    case DictionaryKind::DiracDCT:
      return "DiracDCT";
    case DictionaryKind::DiracDCTRandom:
      return "DiracDCTRandom";
    case DictionaryKind::Custom:
      return "Custom";
  }
  return "Custom";
}

DictionaryKind parse_kind(std::string_view name) {
  if (name == "DiracDCT") return DictionaryKind::DiracDCT;
  if (name == "DiracDCTRandom") return DictionaryKind::DiracDCTRandom;
  if (name == "Custom") return DictionaryKind::Custom;
  throw InvalidArgument("unknown dictionary kind '" + std::string(name) + "'");
}

Dictionary::Dictionary(DenseMatrix atoms, DictionaryKind kind) : atoms_(std::move(atoms)), kind_(kind) {
  if (atoms_.rows() == 0) throw InvalidArgument("Dictionary: dimension must be positive");
  if (atoms_.cols() < atoms_.rows()) {
    throw InvalidArgument("Dictionary: need K >= d (got d=" + std::to_string(atoms_.rows()) +
                          ", K=" + std::to_string(atoms_.cols()) + ")");
  }
  for (std::size_t k = 0; k < atoms_.cols(); ++k) {
    const double norm = std::sqrt(kernels::scalar::dot(atoms_.col(k).data(), atoms_.col(k).data(), atoms_.rows()));
    if (std::abs(norm - 1.0) > kUnitNormTolerance) {
      throw InvalidArgument("Dictionary: atom " + std::to_string(k) + " has norm " + std::to_string(norm));
    }
  }
}

namespace {

void fill_dirac_dct(DenseMatrix& m, std::size_t d) {
  for (std::size_t n = 0; n < d; ++n) m(n, n) = 1.0;
  const double dd = static_cast<double>(d);
  const double dc = 1.0 / std::sqrt(dd);
  const double ac = std::sqrt(2.0 / dd);
  for (std::size_t n = 0; n < d; ++n) m(n, d) = dc;
  for (std::size_t j = 1; j < d; ++j) {
    for (std::size_t n = 0; n < d; ++n) {
      m(n, d + j) = ac * std::cos(std::numbers::pi * static_cast<double>((2 * n + 1) * j) / (2.0 * dd));
    }
  }
}

void check_dimension(std::size_t d) {
  if (d < 2 || d % 2 != 0) throw InvalidArgument("dictionary dimension must be even and >= 2");
}

// The cosine sum leaves norms a few ulps off 1; renormalise so the unit-norm
// invariant holds to machine precision.
void normalise_columns(DenseMatrix& m, std::size_t first) {
  for (std::size_t k = first; k < m.cols(); ++k) {
    auto c = m.col(k);
    const double norm = std::sqrt(kernels::scalar::dot(c.data(), c.data(), c.size()));
    for (double& v : c) v /= norm;
  }
}

}  // namespace

Dictionary build_dirac_dct(std::size_t d) {
  check_dimension(d);
  DenseMatrix m(d, 2 * d);
  fill_dirac_dct(m, d);
  normalise_columns(m, d);
  return Dictionary(std::move(m), DictionaryKind::DiracDCT);
}

Dictionary build_dirac_dct_random(std::size_t d, std::uint64_t seed) {
  check_dimension(d);
  DenseMatrix m(d, 4 * d);
  fill_dirac_dct(m, d);
  normalise_columns(m, d);
  Rng rng = make_rng(seed);
  std::normal_distribution<double> gauss;
  for (std::size_t k = 2 * d; k < 4 * d; ++k) {
    for (double& v : m.col(k)) v = gauss(rng);
  }
  normalise_columns(m, 2 * d);
  return Dictionary(std::move(m), DictionaryKind::DiracDCTRandom);
}

double coherence(const Dictionary& dict) {
  const std::size_t k = dict.size();
  if (k < 2) throw InvalidArgument("coherence: need at least two atoms");
  const auto& m = dict.matrix();
  Vector column(k);
  double mu = 0.0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    // Row j of the Gram matrix, upper triangle only.
    const std::size_t rest = k - j - 1;
    kernels::active().gemv_t(m.col(j + 1).data(), m.rows(), rest, m.col(j).data(), column.data());
    for (std::size_t i = 0; i < rest; ++i) mu = std::max(mu, std::abs(column[i]));
  }
  return mu;
}

double delta(const Dictionary& dict, std::span<const std::size_t> atoms) {
  DenseMatrix g = gram(dict.matrix(), atoms);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return sym_op_norm(g);
}

// --- CSV --------------------------------------------------------------------

void write_dictionary_csv(const Dictionary& dict, std::ostream& out) {
  const auto& m = dict.matrix();
  out << "d,K,kind\n" << m.rows() << ',' << m.cols() << ',' << kind_name(dict.kind()) << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_dictionary_csv(const Dictionary& dict, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_dictionary_csv(dict, out);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, std::size_t row) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("dictionary CSV: bad number '" + s + "' on data row " + std::to_string(row));
  }
}

}  // namespace

Dictionary read_dictionary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "d,K,kind") throw InvalidArgument("dictionary CSV: missing 'd,K,kind' header");
  if (!std::getline(in, line)) throw InvalidArgument("dictionary CSV: missing dimensions line");
  const auto meta = split_commas(line);
  if (meta.size() != 3) throw InvalidArgument("dictionary CSV: malformed dimensions line");
  const std::size_t d = std::stoul(meta[0]);
  const std::size_t k = std::stoul(meta[1]);
  const DictionaryKind kind = parse_kind(meta[2]);
  std::vector<double> data(d * k);
  for (std::size_t i = 0; i < d; ++i) {
    if (!std::getline(in, line)) throw InvalidArgument("dictionary CSV: expected " + std::to_string(d) + " data rows");
    const auto fields = split_commas(line);
    if (fields.size() != k) {
      throw InvalidArgument("dictionary CSV: data row " + std::to_string(i) + " has " +
                            std::to_string(fields.size()) + " fields, expected " + std::to_string(k));
    }
    for (std::size_t j = 0; j < k; ++j) data[j * d + i] = parse_double(fields[j], i);
  }
  return Dictionary(DenseMatrix(d, k, std::move(data)), kind);
}

Dictionary read_dictionary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_dictionary_csv(in);
}

}  // namespace sparsekit
