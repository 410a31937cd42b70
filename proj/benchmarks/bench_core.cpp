#include <benchmark/benchmark.h>

#include "gumbelrates/exact_law.hpp"
#include "gumbelrates/metrics.hpp"
#include "gumbelrates/montecarlo.hpp"
#include "gumbelrates/norming.hpp"
#include "gumbelrates/special_fn.hpp"

namespace {

using namespace gumbelrates;

void BM_NormalTail(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_tail(z));
        z = (z < 38.0) ? z + 1e-3 : 0.0;
    }
}
BENCHMARK(BM_NormalTail);

void BM_LogNormalCdf(benchmark::State& state) {
    double z = -40.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_normal_cdf(z));
        z = (z < 8.0) ? z + 1e-3 : -40.0;
    }
}
BENCHMARK(BM_LogNormalCdf);

void BM_QuantileComplement(benchmark::State& state) {
    double q = 1e-12;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_quantile_complement(q));
        q = (q < 0.4) ? q * 1.01 : 1e-12;
    }
}
BENCHMARK(BM_QuantileComplement);

void BM_LawLogPdf(benchmark::State& state) {
    const MaxLaw law(make_scheme(Kind::Classical, 1e8));
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(law.log_pdf(x));
        x = (x < 6.0) ? x + 1e-3 : -2.0;
    }
}
BENCHMARK(BM_LawLogPdf);

void BM_ScoreRatio(benchmark::State& state) {
    const MaxLaw law(make_scheme(Kind::Classical, 1e8));
    double x = -2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(law.score_ratio(x));
        x = (x < 6.0) ? x + 1e-3 : -2.0;
    }
}
BENCHMARK(BM_ScoreRatio);

void BM_Metric(benchmark::State& state) {
    const Metric m = static_cast<Metric>(state.range(0));
    const MaxLaw law(make_scheme(Kind::Classical, 1e8));
    const QuadratureConfig cfg = QuadratureConfig::for_n(1e8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_metric(m, law, cfg).value);
    }
}
BENCHMARK(BM_Metric)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_SampleMax(benchmark::State& state) {
    const NormingScheme s = make_scheme(Kind::Classical, 1e6);
    for (auto _ : state) {
        SimConfig cfg{1000000, static_cast<std::uint64_t>(state.range(0)), 42};
        benchmark::DoNotOptimize(sample_max(cfg, s).size());
    }
}
BENCHMARK(BM_SampleMax)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
