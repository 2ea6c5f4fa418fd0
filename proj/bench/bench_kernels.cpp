// Naive full-scan reference vs indexed OpenMP kernels on synthetic snapshots.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "naive.hpp"
#include "synthetic.hpp"

using namespace geoden;

namespace {

const Snapshot& snapshot_of(std::size_t n) {
    static std::map<std::size_t, std::shared_ptr<const Snapshot>> cache;
    auto& slot = cache[n];
    if (!slot) {
        std::mt19937_64 rng(n);
        slot = geoden::testing::synthetic_snapshot(rng, n);
    }
    return *slot;
}

SelectionContext wide_context(const Snapshot& snap) {
    return {snap.regions().default_regions(), full_window(snap.span()),
            SerotypeSet{Serotype::DENV1, Serotype::DENV2, Serotype::DENV4}};
}

void BM_FilterNaive(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto ctx = wide_context(snap);
    for (auto _ : state) benchmark::DoNotOptimize(reference::naive_filter(snap, ctx));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FilterKernel(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto ctx = wide_context(snap);
    for (auto _ : state) benchmark::DoNotOptimize(filter(snap, ctx));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CooccurrenceNaive(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto ids = reference::naive_filter(snap, wide_context(snap));
    const auto combos = enumerate_combinations();
    for (auto _ : state) benchmark::DoNotOptimize(reference::naive_cooccurrence(snap, ids, combos));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ids.size()));
}

void BM_CooccurrenceKernel(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto slice = filter(snap, wide_context(snap));
    const auto combos = enumerate_combinations();
    for (auto _ : state) benchmark::DoNotOptimize(cooccurrence(slice, combos));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(slice.size()));
}

void BM_TimelineNaive(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto ctx = wide_context(snap);
    for (auto _ : state) benchmark::DoNotOptimize(reference::naive_timeline(snap, ctx.regions, ctx.serotypes, ctx.window));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TimelineKernel(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto ctx = wide_context(snap);
    for (auto _ : state) benchmark::DoNotOptimize(timeline(snap, ctx.regions, ctx.serotypes, ctx.window));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrajectoryNaive(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto ctx = wide_context(snap);
    for (auto _ : state) {
        for (const auto& r : ctx.regions) {
            benchmark::DoNotOptimize(reference::naive_trajectory(snap, r, ctx.window, ctx.serotypes, std::nullopt));
        }
    }
}

void BM_TrajectoryKernel(benchmark::State& state) {
    const auto& snap = snapshot_of(static_cast<std::size_t>(state.range(0)));
    const auto ctx = wide_context(snap);
    for (auto _ : state) {
        for (const auto& r : ctx.regions) benchmark::DoNotOptimize(trajectory(snap, r, ctx.window, ctx.serotypes));
    }
}

}  // namespace

BENCHMARK(BM_FilterNaive)->Arg(4000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FilterKernel)->Arg(4000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CooccurrenceNaive)->Arg(4000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CooccurrenceKernel)->Arg(4000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TimelineNaive)->Arg(4000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TimelineKernel)->Arg(4000)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectoryNaive)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectoryKernel)->Arg(4000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
