#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "sparsekit/linops.hpp"

namespace sparsekit {

enum class DictionaryKind { DiracDCT, DiracDCTRandom, Custom };

std::string_view kind_name(DictionaryKind kind) noexcept;
DictionaryKind parse_kind(std::string_view name);  // throws InvalidArgument

/// d×K matrix of unit-norm atoms. Immutable once built.
class Dictionary {
 public:
  /// Validates unit-norm columns (to 1e-12) and K ≥ d.
  Dictionary(DenseMatrix atoms, DictionaryKind kind);

  const DenseMatrix& matrix() const noexcept { return atoms_; }
  std::size_t dim() const noexcept { return atoms_.rows(); }
  std::size_t size() const noexcept { return atoms_.cols(); }
  DictionaryKind kind() const noexcept { return kind_; }
  std::span<const double> atom(std::size_t k) const noexcept { return atoms_.col(k); }

 private:
  DenseMatrix atoms_;
  DictionaryKind kind_;
};

inline constexpr double kUnitNormTolerance = 1e-12;

/// Dirac basis followed by the orthonormal DCT-II basis; K = 2d.
Dictionary build_dirac_dct(std::size_t d);

/// build_dirac_dct(d) plus 2d atoms drawn uniformly from the unit sphere; K = 4d.
Dictionary build_dirac_dct_random(std::size_t d, std::uint64_t seed);

/// max_{j≠k} |<φ_j, φ_k>| by exhaustive scan.
double coherence(const Dictionary& dict);

/// ‖Φ_Iᵀ Φ_I − Id‖₂ for the atoms I.
double delta(const Dictionary& dict, std::span<const std::size_t> atoms);

// CSV exchange format: a `d,K,kind` header line, one values line, then d rows
// of K comma-separated entries (atom k is column k). Values are written with
// 17 significant digits so a round trip is exact.
void write_dictionary_csv(const Dictionary& dict, std::ostream& out);
void write_dictionary_csv(const Dictionary& dict, const std::string& path);
Dictionary read_dictionary_csv(std::istream& in);
Dictionary read_dictionary_csv(const std::string& path);

}  // namespace sparsekit
