#include <atomic>

#include "kernels_internal.hpp"
#include "sparsekit/errors.hpp"
#include "sparsekit/kernels.hpp"

namespace sparsekit::kernels {

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar, &scalar::dot, &scalar::axpy, &scalar::gemv_t};

#if defined(SPARSEKIT_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, &avx2::dot, &avx2::axpy, &avx2::gemv_t};
#endif

#if defined(SPARSEKIT_HAVE_NEON)
constexpr KernelTable kNeonTable{Isa::Neon, &neon::dot, &neon::axpy, &neon::gemv_t};
#endif

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(SPARSEKIT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(SPARSEKIT_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* detect_best() {
#if defined(SPARSEKIT_HAVE_AVX2)
  if (cpu_has(Isa::Avx2)) return &kAvx2Table;
#endif
#if defined(SPARSEKIT_HAVE_NEON)
  return &kNeonTable;
#endif
  return &kScalarTable;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{detect_best()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> supported_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_has(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& table_for(Isa isa) {
  if (!cpu_has(isa)) {
    throw InvalidArgument("kernel ISA '" + std::string(isa_name(isa)) + "' not available on this host");
  }
  switch (isa) {
    case Isa::Avx2:
#if defined(SPARSEKIT_HAVE_AVX2)
      return kAvx2Table;
#endif
      break;
    case Isa::Neon:
#if defined(SPARSEKIT_HAVE_NEON)
      return kNeonTable;
#endif
      break;
    case Isa::Scalar:
      break;
  }
  return kScalarTable;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void force_isa(Isa isa) { current().store(&table_for(isa), std::memory_order_release); }

void reset_isa() { current().store(detect_best(), std::memory_order_release); }

}  // namespace sparsekit::kernels
