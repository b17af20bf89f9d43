// Compares the scalar reference kernels with the SIMD variants on the shapes
// the solvers use (d = 128, K = 256 and 512).

#include <benchmark/benchmark.h>

#include <random>

#include "sparsekit/kernels.hpp"

namespace {

using sparsekit::kernels::Isa;

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

void BM_Dot(benchmark::State& state, Isa isa) {
  const auto& table = sparsekit::kernels::table_for(isa);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 1), b = random_vector(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(table.dot(a.data(), b.data(), n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GemvT(benchmark::State& state, Isa isa) {
  const auto& table = sparsekit::kernels::table_for(isa);
  const std::size_t rows = 128;
  const auto cols = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(rows * cols, 3), x = random_vector(rows, 4);
  std::vector<double> out(cols);
  for (auto _ : state) {
    table.gemv_t(a.data(), rows, cols, x.data(), out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * cols));
}

void register_all() {
  for (Isa isa : sparsekit::kernels::supported_isas()) {
    const std::string name(sparsekit::kernels::isa_name(isa));
    benchmark::RegisterBenchmark(("dot/" + name).c_str(), BM_Dot, isa)->Arg(128)->Arg(1024);
    benchmark::RegisterBenchmark(("gemv_t/" + name).c_str(), BM_GemvT, isa)->Arg(256)->Arg(512);
  }
}

}  // namespace

int main(int argc, char** argv) {
  register_all();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
