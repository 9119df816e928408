#include <benchmark/benchmark.h>

#include <robin/enclosure.hpp>
#include <robin/green.hpp>
#include <robin/hardy.hpp>
#include <robin/spectra.hpp>
#include <robin/stability.hpp>

using robin::Complex;
using robin::RobinCoupling;

namespace {

const RobinCoupling kHalf{Complex(0.5, 0.0)};

void BM_GreenEntry(benchmark::State& state)
{
    const robin::GreenKernelEvaluator ev(kHalf);
    const robin::SpectralPoint p = robin::SpectralPoint::from_z(Complex(1.2, 0.9));
    int m = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.entry(p, m, 17));
        m = m % 40 + 1;
    }
}
BENCHMARK(BM_GreenEntry);

void BM_SupFactor(benchmark::State& state)
{
    const double rho = 1.0 - std::pow(10.0, -static_cast<double>(state.range(0)));
    const robin::SpectralPoint p = robin::SpectralPoint::from_k(std::polar(rho, 0.7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(robin::green_sup_factor(p, kHalf));
    }
}
BENCHMARK(BM_SupFactor)->Arg(1)->Arg(2)->Arg(3);

void BM_Indicator(benchmark::State& state)
{
    const Complex z(2.2, 0.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(robin::enclosure_indicator(z, kHalf, 1.0));
    }
}
BENCHMARK(BM_Indicator);

void BM_TraceBoundary(benchmark::State& state)
{
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(robin::trace_boundary(kHalf, 1.0, grid, 1e-3, 1));
    }
}
BENCHMARK(BM_TraceBoundary)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_EigenvaluesDense(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const robin::TridiagonalMatrix m =
        robin::build_truncation(RobinCoupling(Complex(0.3, 0.4)), {}, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(robin::eigenvalues_dense(m));
    }
}
BENCHMARK(BM_EigenvaluesDense)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_CountOutsideBand(benchmark::State& state)
{
    const robin::TridiagonalMatrix m =
        robin::build_truncation(RobinCoupling(Complex(2.0, 0.0)), {}, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(robin::count_outside_band(m, 0.1));
    }
}
BENCHMARK(BM_CountOutsideBand)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RankOneExact(benchmark::State& state)
{
    const int site = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            robin::rank_one_eigenvalues_exact(kHalf, Complex(0.9, 1.1), site));
    }
}
BENCHMARK(BM_RankOneExact)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_KPrimeNorm(benchmark::State& state)
{
    robin::Potential v;
    for (int n = 1; n <= 24; ++n) {
        v.set(n, Complex(0.05 / n, 0.02));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(robin::kprime_op_norm(0.4, v));
    }
}
BENCHMARK(BM_KPrimeNorm);

void BM_Certificate(benchmark::State& state)
{
    const long long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(robin::optimality_certificate(0.5, n));
    }
}
BENCHMARK(BM_Certificate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
