#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "poissonbm/experiment.hpp"
#include "poissonbm/poisson.hpp"
#include "poissonbm/process.hpp"
#include "poissonbm/reduction.hpp"

using namespace poissonbm;

namespace {

ThetaConfig reference_theta()
{
    ThetaConfig c;
    c.cos_block = {parse_angle("1/2 pi"), parse_angle("2.2")};
    c.sin_block = {parse_angle("1/2 pi"), parse_angle("1.1")};
    return c;
}

double horizon_for(benchmark::State const& state)
{
    // ε = 1/range(0)
    double const eps = 1.0 / static_cast<double>(state.range(0));
    return path_time(1.0, eps);
}

void BM_SamplePath(benchmark::State& state)
{
    double const horizon = horizon_for(state);
    std::uint32_t rep = 0;
    for (auto _ : state)
    {
        auto stream = derive_stream(1, 0, rep++);
        benchmark::DoNotOptimize(sample_poisson_path(horizon, stream));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(horizon));
}
BENCHMARK(BM_SamplePath)->Arg(10)->Arg(20)->Arg(40);

void BM_TrigIntegral(benchmark::State& state)
{
    double const horizon = horizon_for(state);
    auto stream = derive_stream(2, 0, 0);
    auto const path = sample_poisson_path(horizon, stream);
    auto const theta = Angle::radians(2.2);
    for (auto _ : state)
        benchmark::DoNotOptimize(trig_integral(path, theta, 0.0, horizon, TrigKind::kCos));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(path.jump_times.size()));
}
BENCHMARK(BM_TrigIntegral)->Arg(10)->Arg(20)->Arg(40);

void BM_BuildSample(benchmark::State& state)
{
    double const eps = 1.0 / static_cast<double>(state.range(0));
    auto config = std::make_shared<ThetaConfig const>(reference_theta());
    auto grid = std::make_shared<EvaluationGrid const>(EvaluationGrid::uniform(1.0, 64));
    SampleBuilder const builder(config, grid, eps, default_table_size(path_time(1.0, eps)));
    auto stream = derive_stream(3, 0, 0);
    auto const path = sample_poisson_path(builder.required_horizon(), stream);
    for (auto _ : state)
        benchmark::DoNotOptimize(builder.build(path));
}
BENCHMARK(BM_BuildSample)->Arg(10)->Arg(20)->Arg(40);

void BM_Reduce(benchmark::State& state)
{
    auto stream = derive_stream(4, 0, 0);
    std::vector<double> values(static_cast<std::size_t>(state.range(0)));
    for (auto& v : values)
        v = stream.uniform() - 0.5;
    auto const mode = state.range(1) == 0 ? ReductionMode::kFixedTree : ReductionMode::kSequential;
    for (auto _ : state)
        benchmark::DoNotOptimize(reduce_sum(values, mode));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Reduce)->Args({5000, 0})->Args({5000, 1})->Args({100000, 0})->Args({100000, 1});

void BM_SimulateSamples(benchmark::State& state)
{
    double const eps = 1.0 / static_cast<double>(state.range(0));
    auto const theta = reference_theta();
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_samples(theta, 1.0, 64, eps, 1000, 5, 0, 1));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SimulateSamples)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
