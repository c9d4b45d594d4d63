// kernel_bench - serial vs OpenMP timings for the state-vector kernels
#include <benchmark/benchmark.h>

#include <random>

#include "dicke/kernels.hpp"

using dicke::cplx;
namespace kernels = dicke::kernels;

namespace {

std::vector<cplx> random_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<cplx> amp(n);
    for (cplx& a : amp)
        a = cplx{unit(rng), unit(rng)};
    return amp;
}

struct Lattice {
    int two_j;
    int n_max;
    std::size_t size() const {
        return static_cast<std::size_t>(two_j + 1) * (n_max + 1) * (n_max + 1);
    }
};

Lattice lattice_for(int64_t scale) {
    // scale 0: protocol-sized, 1: sweep-sized, 2: large study
    switch (scale) {
        case 0: return {20, 15};
        case 1: return {100, 31};
        default: return {200, 63};
    }
}

void bench_spin_field_phases(benchmark::State& state, kernels::Backend backend) {
    const Lattice lat = lattice_for(state.range(0));
    std::vector<cplx> amp = random_state(lat.size(), 42);
    for (auto _ : state) {
        kernels::apply_spin_field_phases(amp, lat.two_j, lat.n_max, 0.37, backend);
        benchmark::DoNotOptimize(amp.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(lat.size()));
}

void bench_squared_norm(benchmark::State& state, kernels::Backend backend) {
    const Lattice lat = lattice_for(state.range(0));
    const std::vector<cplx> amp = random_state(lat.size(), 43);
    for (auto _ : state) {
        double norm = kernels::squared_norm(amp, backend);
        benchmark::DoNotOptimize(norm);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(lat.size()));
}

void bench_inner_product(benchmark::State& state, kernels::Backend backend) {
    const Lattice lat = lattice_for(state.range(0));
    const std::vector<cplx> a = random_state(lat.size(), 44);
    const std::vector<cplx> b = random_state(lat.size(), 45);
    for (auto _ : state) {
        cplx overlap = kernels::inner_product(a, b, backend);
        benchmark::DoNotOptimize(overlap);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(lat.size()));
}

void bench_reduce_field_density(benchmark::State& state, kernels::Backend backend) {
    const Lattice lat = lattice_for(state.range(0));
    const std::size_t rows = lat.two_j + 1;
    const std::size_t cols = lat.size() / rows;
    const std::vector<cplx> amp = random_state(lat.size(), 46);
    std::vector<cplx> rho(cols * cols);
    for (auto _ : state) {
        kernels::reduce_density_keep_cols(amp, rows, cols, rho, backend);
        benchmark::DoNotOptimize(rho.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cols * cols * rows));
}

}  // namespace

BENCHMARK_CAPTURE(bench_spin_field_phases, serial, kernels::Backend::serial)
    ->Arg(0)->Arg(1)->Arg(2);
BENCHMARK_CAPTURE(bench_spin_field_phases, openmp, kernels::Backend::openmp)
    ->Arg(0)->Arg(1)->Arg(2);
BENCHMARK_CAPTURE(bench_squared_norm, serial, kernels::Backend::serial)->Arg(1)->Arg(2);
BENCHMARK_CAPTURE(bench_squared_norm, openmp, kernels::Backend::openmp)->Arg(1)->Arg(2);
BENCHMARK_CAPTURE(bench_inner_product, serial, kernels::Backend::serial)->Arg(1)->Arg(2);
BENCHMARK_CAPTURE(bench_inner_product, openmp, kernels::Backend::openmp)->Arg(1)->Arg(2);
BENCHMARK_CAPTURE(bench_reduce_field_density, serial, kernels::Backend::serial)->Arg(0)->Arg(1);
BENCHMARK_CAPTURE(bench_reduce_field_density, openmp, kernels::Backend::openmp)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
