#include <benchmark/benchmark.h>

#include <limits>

#include "sharpquad/bounds.hpp"
#include "sharpquad/holder.hpp"
#include "sharpquad/verification.hpp"

using namespace sharpquad;

namespace {

const Interval unit(0.0, 1.0);
const double inf = std::numeric_limits<double>::infinity();

void ChainBuild(benchmark::State& state) {
    auto p = PiecewisePolynomial::polynomial(unit, {1.0, 0.5, 0.25});
    int n = int(state.range(0));
    auto w = WeightSystem::trivial(unit, n);
    for (auto _ : state) {
        auto chain = build_chain(p, w, 0.37, n);
        benchmark::DoNotOptimize(chain.top());
    }
}
BENCHMARK(ChainBuild)->DenseRange(1, 5);

void LqNorm(benchmark::State& state) {
    auto p = PiecewisePolynomial::polynomial(unit, {1.0, 0.5});
    auto chain = build_chain(p, WeightSystem::trivial(unit, 3), 0.37, 3);
    const double qps[] = {1.0, 2.0, 2.5, inf};
    double qp = qps[state.range(0)];
    for (auto _ : state) benchmark::DoNotOptimize(lq_norm(chain.top(), qp));
}
BENCHMARK(LqNorm)->DenseRange(0, 3);

void OptimizeNode(benchmark::State& state) {
    auto p = PiecewisePolynomial::polynomial(unit, {1.0, 1.0});
    auto spec = ClassSpec::sobolev(2, inf);
    for (auto _ : state) benchmark::DoNotOptimize(optimize_node(p, spec));
}
BENCHMARK(OptimizeNode);

void HolderBound(benchmark::State& state) {
    auto p = PiecewisePolynomial::constant(unit, 1.0);
    auto omega = ModulusSpec::power(1.0, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(holder_bound(p, 3, omega).constant);
}
BENCHMARK(HolderBound);

void AuditTrials(benchmark::State& state) {
    auto p = PiecewisePolynomial::constant(unit, 1.0);
    auto spec = ClassSpec::sobolev(2, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo_audit(p, spec, 0.35, int(state.range(0)), 7));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(AuditTrials)->Arg(64)->Arg(512);

} // namespace

BENCHMARK_MAIN();
