// Serial reference kernels vs their OpenMP versions on a star4 sector Hamiltonian.

#include <benchmark/benchmark.h>

#include <vector>

#include "hhed/config.hpp"
#include "hhed/kernels.hpp"
#include "hhed/ops.hpp"
#include "hhed/solve.hpp"

namespace {

using namespace hhed;

const CsrMatrix<double>& hamiltonian(int cutoff) {
  static std::vector<std::pair<int, CsrMatrix<double>>> cache;
  for (const auto& [c, m] : cache) {
    if (c == cutoff) return m;
  }
  const auto model = star_model(4, -1, 8, 0.5, 1);
  cache.emplace_back(cutoff, assemble_hh_hamiltonian(model, SectorBasis::sector(4, {4, 0, cutoff})).real_csr());
  return cache.back().second;
}

template <bool Parallel>
void BM_spmv(benchmark::State& state) {
  const auto& a = hamiltonian(static_cast<int>(state.range(0)));
  std::vector<double> x(a.cols, 1.0), y(a.rows);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::parallel::spmv<double>(a, x, y);
    } else {
      kernels::serial::spmv<double>(a, x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["dim"] = static_cast<double>(a.rows);
  state.counters["threads"] = Parallel ? kernels::thread_count() : 1;
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.nnz()));
}

template <bool Parallel>
void BM_dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Complex> x(n, Complex(0.5, 0.25)), y(n, Complex(-1.0, 2.0));
  for (auto _ : state) {
    Complex d = Parallel ? kernels::parallel::dot<Complex>(x, y) : kernels::serial::dot<Complex>(x, y);
    benchmark::DoNotOptimize(d);
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(2 * n * sizeof(Complex)));
}

template <bool Parallel>
void BM_norm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n, 0.5);
  for (auto _ : state) {
    double d = Parallel ? kernels::parallel::norm<double>(x) : kernels::serial::norm<double>(x);
    benchmark::DoNotOptimize(d);
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(n * sizeof(double)));
}

void BM_ground_state(benchmark::State& state) {
  const auto model = star_model(4, -1, 8, 0.5, 1);
  const auto h = assemble_hh_hamiltonian(model, SectorBasis::sector(4, {4, 0, static_cast<int>(state.range(0))}));
  SolverOptions opts;
  opts.force = SolverKind::Lanczos;
  for (auto _ : state) benchmark::DoNotOptimize(ground_spectrum(h, 2, opts).ground_energy());
  state.counters["dim"] = static_cast<double>(h.rows());
  state.counters["threads"] = kernels::thread_count();
}

}  // namespace

BENCHMARK(BM_spmv<false>)->Arg(6)->Arg(10)->Arg(12);
BENCHMARK(BM_spmv<true>)->Arg(6)->Arg(10)->Arg(12);
BENCHMARK(BM_dot<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_dot<true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_norm<false>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_norm<true>)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_ground_state)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
