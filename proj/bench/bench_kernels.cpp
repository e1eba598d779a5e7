#include "ibc/korobov.hpp"
#include "ibc/sampling.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ibc;

namespace {

struct SamplingFixture {
    AdaptiveAlgorithm alg;
    std::function<Element(const Element&)> S;
    std::vector<Element> samples;

    SamplingFixture() {
        alg.info = make_nonadaptive({PointEval{{0.25}}, PointEval{{0.75}}});
        alg.recovery = [](const Data& d) -> Element {
            return pwl_constant(0.5 * (d[0].real() + d[1].real()));
        };
        S = [](const Element& f) { return f; };
        std::mt19937_64 rng(11);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int i = 0; i < 2048; ++i) {
            std::vector<double> x, v;
            for (int j = 0; j <= 32; ++j) {
                x.push_back(j / 32.0);
                v.push_back(g(rng));
            }
            samples.push_back(make_pwlinear(x, v));
        }
    }
};

const SamplingFixture& sampling_fixture() {
    static SamplingFixture fx;
    return fx;
}

void bm_sampling_serial(benchmark::State& state) {
    const auto& fx = sampling_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            max_error_over_samples_serial(fx.alg, fx.S, NormSpec::l2(), fx.samples));
}

void bm_sampling_omp(benchmark::State& state) {
    const auto& fx = sampling_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            max_error_over_samples_omp(fx.alg, fx.S, NormSpec::l2(), fx.samples));
}

void bm_cbc_serial(benchmark::State& state) {
    KorobovParams params{1.0, {1.0, 0.5, 0.25}, 3};
    for (auto _ : state)
        benchmark::DoNotOptimize(cbc_generating_vector(4099, params, 40.0, false));
}

void bm_cbc_omp(benchmark::State& state) {
    KorobovParams params{1.0, {1.0, 0.5, 0.25}, 3};
    for (auto _ : state)
        benchmark::DoNotOptimize(cbc_generating_vector(4099, params, 40.0, true));
}

}  // namespace

BENCHMARK(bm_sampling_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sampling_omp)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cbc_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cbc_omp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
