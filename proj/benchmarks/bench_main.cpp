#include "hitchin_glue/corrector.hpp"
#include "hitchin_glue/gauge.hpp"
#include "hitchin_glue/linear.hpp"
#include "hitchin_glue/studies.hpp"

#include <benchmark/benchmark.h>

using namespace hg;

namespace {

NeckPair model_background(int n_tau) {
    return sample_model(ModelParams(0.2, cd(1.0, 0.0)), neck_grid(PlumbingConfig::from_R(0.01, n_tau, 4)));
}

void BM_AssembleL(benchmark::State& s) {
    NeckPair p = model_background(int(s.range(0)));
    for (auto _ : s) benchmark::DoNotOptimize(assemble_L(p).matrix.nonZeros());
}
BENCHMARK(BM_AssembleL)->Arg(81)->Arg(161)->Arg(321)->Unit(benchmark::kMillisecond);

void BM_SmallestEigenvalue(benchmark::State& s) {
    LinearOperatorHandle L = assemble_L(model_background(int(s.range(0))));
    for (auto _ : s) benchmark::DoNotOptimize(smallest_eigenvalue(L, 1e-8));
}
BENCHMARK(BM_SmallestEigenvalue)->Arg(81)->Arg(161)->Arg(321)->Unit(benchmark::kMillisecond);

void BM_ModeSolve(benchmark::State& s) {
    const int j = int(s.range(0));
    RadialFunction h = RadialFunction::sample([](double r) { return cd(std::pow(r, 0.7)); }, 1e-6, 2000);
    WeightConfig w(0.5, 0.45, 0.35);
    for (auto _ : s) benchmark::DoNotOptimize(j == 0 ? solve_mode_zero(h) : solve_mode_j(j, h, w));
}
BENCHMARK(BM_ModeSolve)->Arg(0)->Arg(1)->Arg(8);

void BM_ApproximatePairBuild(benchmark::State& s) {
    auto [plus, minus] = wolf_fixture(0.5);
    PlumbingConfig cfg = PlumbingConfig::from_R(0.1, 121, 4);
    for (auto _ : s) {
        ApproximatePair a(plus, minus, cfg, fixture_weights(0.5));
        benchmark::DoNotOptimize(a(1.0).phi.v(0, 0));
    }
}
BENCHMARK(BM_ApproximatePairBuild)->Unit(benchmark::kMillisecond);

void BM_ApproximatePairSample(benchmark::State& s) {
    auto [plus, minus] = wolf_fixture(0.5);
    ApproximatePair a(plus, minus, PlumbingConfig::from_R(0.1, 121, 4), fixture_weights(0.5));
    double t = 0.0;
    for (auto _ : s) {
        benchmark::DoNotOptimize(a(t).phi.v(0, 0));
        t = t > 5.0 ? 0.0 : t + 0.01;
    }
}
BENCHMARK(BM_ApproximatePairSample);

void BM_Corrector(benchmark::State& s) {
    NeckPair app = make_background(Background::approx, 0.1, int(s.range(0)), 4);
    for (auto _ : s) benchmark::DoNotOptimize(correct(app, 0.1).residual_after);
}
BENCHMARK(BM_Corrector)->Arg(61)->Arg(121)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
