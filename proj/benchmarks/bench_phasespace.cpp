#include <benchmark/benchmark.h>

#include "phasespace/amplifier.hpp"
#include "phasespace/convolution.hpp"
#include "phasespace/gendelta.hpp"
#include "phasespace/quasiprob.hpp"
#include "phasespace/reconstruct.hpp"

namespace ps = phasespace;
using ps::Complex;

namespace {

const ps::CatStateSpec kCat(1.5, -1.5, 1.0);

ps::GridSpec square(double half, int n, ps::AxisSemantics s = ps::AxisSemantics::AlphaPlane) {
    return ps::GridSpec::make(-half, half, -half, half, n, n, s);
}

} // namespace

static void BM_WignerFock(benchmark::State& state) {
    const auto spec = square(6.0, static_cast<int>(state.range(1)), ps::AxisSemantics::XPQuadratures);
    for (auto _ : state) benchmark::DoNotOptimize(ps::wigner_fock(static_cast<int>(state.range(0)), spec));
    state.SetItemsProcessed(state.iterations() * spec.nx * spec.ny);
}
BENCHMARK(BM_WignerFock)->Args({2, 201})->Args({10, 201})->Args({2, 401})->Unit(benchmark::kMillisecond);

static void BM_QFunctionGrid(benchmark::State& state) {
    const auto spec = square(8.0, 201);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ps::sample(spec, [](Complex a) { return Complex(ps::q_function(kCat, a)); }));
    }
}
BENCHMARK(BM_QFunctionGrid)->Unit(benchmark::kMillisecond);

static void BM_GaussianSmooth(benchmark::State& state) {
    const auto method = state.range(0) == 0 ? ps::ConvolutionMethod::Direct : ps::ConvolutionMethod::Fft;
    const int n = static_cast<int>(state.range(1));
    const auto spec = square(8.0, n);
    const auto field = ps::sample(spec, [](Complex a) { return Complex(std::exp(-std::norm(a))); });
    const int pad = ps::kernel_padding(spec);
    for (auto _ : state) benchmark::DoNotOptimize(ps::gaussian_smooth(field, pad, method));
    state.SetLabel(state.range(0) == 0 ? "direct" : "fft");
}
BENCHMARK(BM_GaussianSmooth)
    ->ArgsProduct({{0, 1}, {161, 321}})
    ->Unit(benchmark::kMillisecond);

static void BM_TransformChain(benchmark::State& state) {
    const ps::AmplifierGain gain(2.0);
    const auto out = square(6.0, 161);
    const auto p = [&](Complex a) { return Complex(ps::amplified_p(kCat, gain, a)); };
    for (auto _ : state) benchmark::DoNotOptimize(ps::p_to_q_chain(p, out, ps::ConvolutionMethod::Fft));
}
BENCHMARK(BM_TransformChain)->Unit(benchmark::kMillisecond);

static void BM_ReconstructRho(benchmark::State& state) {
    const auto rep = ps::p_cat_terms(kCat);
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ps::reconstruct_rho(rep, n_max));
}
BENCHMARK(BM_ReconstructRho)->Arg(20)->Arg(40)->Arg(80);

static void BM_ReconstructRhoNumeric(benchmark::State& state) {
    const auto rep = ps::p_cat_terms(ps::CatStateSpec(1.0, -1.0, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(ps::reconstruct_rho_numeric(rep, 0.3, 6, 4));
}
BENCHMARK(BM_ReconstructRhoNumeric)->Unit(benchmark::kMillisecond);

static void BM_SiftLimit(benchmark::State& state) {
    const auto f = ps::AnalyticTestFunction::gaussian_envelope(2.0, {Complex(1.0), Complex(1.0)});
    const int levels = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ps::sift_limit(f, Complex(1.0, 0.4), 0.4, levels));
}
BENCHMARK(BM_SiftLimit)->DenseRange(3, 6);
BENCHMARK_MAIN();
