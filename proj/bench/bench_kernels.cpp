// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "yamabe/kernels.hpp"
#include "yamabe/lattice.hpp"

namespace {

namespace kn = yamabe::kernels;

std::vector<double> wave(const kn::Lattice4& lat, double offset) {
  std::vector<double> v(lat.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = offset + 0.3 * std::sin(0.001 * static_cast<double>(i));
  return v;
}

template <bool Parallel>
void BM_Laplacian(benchmark::State& state) {
  const kn::Lattice4 lat{static_cast<std::size_t>(state.range(0))};
  const auto in = wave(lat, 0.0);
  std::vector<double> out(lat.size());
  for (auto _ : state) {
    if constexpr (Parallel) kn::omp::laplacian(lat, in, out, 6.0);
    else kn::serial::laplacian(lat, in, out, 6.0);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(lat.size()));
}

template <bool Parallel>
void BM_FluxLaplacian(benchmark::State& state) {
  const kn::Lattice4 lat{static_cast<std::size_t>(state.range(0))};
  const auto a = wave(lat, 1.0);
  const auto in = wave(lat, 0.0);
  std::vector<double> out(lat.size());
  for (auto _ : state) {
    if constexpr (Parallel) kn::omp::flux_laplacian(lat, a, in, out, 6.0);
    else kn::serial::flux_laplacian(lat, a, in, out, 6.0);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(lat.size()));
}

template <bool Parallel>
void BM_Dot(benchmark::State& state) {
  const kn::Lattice4 lat{static_cast<std::size_t>(state.range(0))};
  const auto a = wave(lat, 1.0);
  const auto b = wave(lat, 0.5);
  for (auto _ : state) {
    double d = Parallel ? kn::omp::dot(a, b) : kn::serial::dot(a, b);
    benchmark::DoNotOptimize(d);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(lat.size()));
}

void BM_CharacteristicSearch(benchmark::State& state) {
  const auto q = yamabe::lattice::IntersectionForm::identity(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto w = yamabe::lattice::min_characteristic_square(q);
    benchmark::DoNotOptimize(w.square);
  }
}

}  // namespace

BENCHMARK(BM_Laplacian<false>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Laplacian<true>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FluxLaplacian<false>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FluxLaplacian<true>)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dot<false>)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Dot<true>)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CharacteristicSearch)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
