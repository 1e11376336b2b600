#include <benchmark/benchmark.h>

#include "rhn/bench.hpp"
#include "rhn/data.hpp"
#include "rhn/model.hpp"
#include "rhn/param_gen.hpp"
#include "rhn/solver.hpp"

namespace {

using namespace rhn;

GenConfig make_config(Index nodes, BiasStrategy strategy) {
    GenConfig config;
    config.kind = Activation::Sigmoid;
    config.r = 0.04;
    config.s = 40.0;
    config.nodes = nodes;
    config.strategy = strategy;
    config.seed = 1;
    return config;
}

void BM_Generate(benchmark::State& state) {
    const Index nodes = state.range(0);
    const Dataset train = make_synthetic(TargetFunction::Peaks1D, 1000, 0.0, 7);
    const GenConfig config = make_config(nodes, BiasStrategy::TrainingPoint);
    for (auto _ : state) {
        HiddenParams params = generate(config, train.dim(), &train.X);
        benchmark::DoNotOptimize(params.weights.data());
    }
    state.SetComplexityN(nodes);
}
BENCHMARK(BM_Generate)->Arg(50)->Arg(100)->Arg(500)->Complexity();

void BM_BuildHiddenMatrix(benchmark::State& state) {
    const Index nodes = state.range(0);
    const Dataset train = make_synthetic(TargetFunction::Peaks1D, 1000, 0.0, 7);
    const GenConfig config = make_config(nodes, BiasStrategy::UniformPoint);
    const HiddenParams params = generate(config, train.dim(), &train.X);
    for (auto _ : state) {
        Matrix H = build_hidden_matrix(params, config.kind, train.X);
        benchmark::DoNotOptimize(H.data());
    }
    state.SetComplexityN(nodes);
}
BENCHMARK(BM_BuildHiddenMatrix)->Arg(50)->Arg(100)->Arg(500)->Complexity();

void BM_SolveOutputWeights(benchmark::State& state) {
    const Index nodes = state.range(0);
    const Dataset train = make_synthetic(TargetFunction::Peaks1D, 1000, 0.0, 7);
    const GenConfig config = make_config(nodes, BiasStrategy::UniformPoint);
    const HiddenParams params = generate(config, train.dim(), &train.X);
    const Matrix H = build_hidden_matrix(params, config.kind, train.X);
    for (auto _ : state) {
        LsqSolution sol = solve_output_weights(H, train.Y);
        benchmark::DoNotOptimize(sol.beta.data());
    }
    state.SetComplexityN(nodes);
}
BENCHMARK(BM_SolveOutputWeights)->Arg(50)->Arg(100)->Arg(500)->Complexity();

void BM_TrainPeaks(benchmark::State& state) {
    const Dataset train = make_synthetic(TargetFunction::Peaks1D, 1000, 0.0, 7);
    const GenConfig config = make_config(100, BiasStrategy::UniformPoint);
    for (auto _ : state) {
        TrainedModel model = rhn::train(train.X, train.Y, config);
        benchmark::DoNotOptimize(model.beta.data());
    }
}
BENCHMARK(BM_TrainPeaks);

} // namespace

BENCHMARK_MAIN();
