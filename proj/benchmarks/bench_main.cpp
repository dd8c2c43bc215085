#include <benchmark/benchmark.h>

#include <random>

#include "gabrank/replicate.hpp"
#include "gabrank/search.hpp"

using namespace gabrank;

static void BM_FieldMulAdd(benchmark::State& state) {
    auto f = build_field(default_field_spec(static_cast<std::uint32_t>(state.range(0)), 4));
    const FieldCtx& ctx = *f;
    Elem acc = ctx.one(), x = ctx.eta();
    for (auto _ : state) {
        acc = ctx.add(ctx.mul(acc, x), x);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_FieldMulAdd)->Arg(2)->Arg(5)->Arg(11);

static void BM_BuildField(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_field(default_field_spec(static_cast<std::uint32_t>(state.range(0)), 4)));
}
BENCHMARK(BM_BuildField)->Arg(4)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_LpRank(benchmark::State& state) {
    auto f = build_field(default_field_spec(3, 4));
    std::mt19937_64 rng(1);
    const LinPoly g = random_invertible(*f, rng);
    for (auto _ : state) benchmark::DoNotOptimize(lp_rank(g));
}
BENCHMARK(BM_LpRank);

static void BM_CheckExtension(benchmark::State& state) {
    auto f = build_field(default_field_spec(3, 4));
    const Code c = gabidulin(*f, 2, 1);
    const LineIndex index(c);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(index.lines().size() - 1));
    for (auto _ : state) {
        const std::uint32_t gens[] = {d(rng), d(rng)};
        benchmark::DoNotOptimize(check_extension(index, gens));
    }
}
BENCHMARK(BM_CheckExtension);

static void BM_ExactRankQ2(benchmark::State& state) {
    auto f = build_field(default_field_spec(2, 4));
    const Code c = gabidulin(*f, static_cast<std::uint32_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(exact_tensor_rank(c).trkLow);
}
BENCHMARK(BM_ExactRankQ2)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Sistemone(benchmark::State& state) {
    auto f = build_field(default_field_spec(static_cast<std::uint32_t>(state.range(0)), 4));
    for (auto _ : state) benchmark::DoNotOptimize(check_sistemone(*f).status);
}
BENCHMARK(BM_Sistemone)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_M10Rank(benchmark::State& state) {
    auto f = build_field(default_field_spec(11, 4));
    const FieldCtx& ctx = *f;
    const Elem Y = ctx.exp(7);
    const YZPair yz{Y, ctx.pow(Y, 12)};
    std::vector<Elem> ls;
    for (std::uint32_t m = 1; m <= 8; ++m) ls.push_back(fq_unit(ctx, m));
    for (auto _ : state) benchmark::DoNotOptimize(rank_over_big(ctx, build_M10(ctx, yz, ls)));
}
BENCHMARK(BM_M10Rank);
BENCHMARK_MAIN();
