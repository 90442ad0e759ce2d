// Serial reference vs OpenMP for the seed tracing, semi-Lagrangian sampling
// and quadrature reduction kernels. Argument: cells per side (strip of
// period 8 uses 8n x n cells).

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "stt/kernels.hpp"
#include "stt/stokes.hpp"
#include "stt/transport.hpp"

using namespace stt;

namespace {

GridSpec bench_grid(int n) { return make_grid(DomainSpec::strip(8), 8 * n, n); }

void trace(benchmark::State& st, kernels::Exec e) {
    const GridSpec g = bench_grid(static_cast<int>(st.range(0)));
    const SteadyVelocity u(poiseuille(1.0, g).u);
    TransportConfig tc;
    tc.dt = 0.01;
    std::vector<double> dx(static_cast<std::size_t>(g.nx) * g.nz), dz(dx.size());
    for (auto _ : st) {
        kernels::trace_seeds(u, g, 0.0, 0.1, tc, dx.data(), dz.data(), e);
        benchmark::DoNotOptimize(dx.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(dx.size()));
}

void feet(benchmark::State& st, kernels::Exec e) {
    const GridSpec g = bench_grid(static_cast<int>(st.range(0)));
    const ScalarField rho = sample(g, Staggering::Center, [](double x, double z) { return std::sin(x) * z; });
    std::vector<double> dx(rho.size(), 0.37 * g.hx), dz(rho.size(), -0.21 * g.hz), out(rho.size());
    for (auto _ : st) {
        kernels::sample_feet(rho, dx.data(), dz.data(), out.data(), e);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(out.size()));
}

void dot(benchmark::State& st, kernels::Exec e) {
    const GridSpec g = bench_grid(static_cast<int>(st.range(0)));
    std::vector<double> a(static_cast<std::size_t>(g.nx) * g.nz, 0.5), wx(g.nx, g.hx), wz(g.nz, g.hz);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::tensor_dot(a.data(), a.data(), wx.data(), g.nx, wz.data(), g.nz, e));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(a.size()));
}

}  // namespace

BENCHMARK_CAPTURE(trace, serial, kernels::Exec::Serial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(trace, omp, kernels::Exec::Parallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(feet, serial, kernels::Exec::Serial)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(feet, omp, kernels::Exec::Parallel)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(dot, serial, kernels::Exec::Serial)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(dot, omp, kernels::Exec::Parallel)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
