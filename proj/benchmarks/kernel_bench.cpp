#include "dioph/equidist.hpp"
#include "dioph/lattice.hpp"
#include "dioph/limsup.hpp"
#include "dioph/orbit.hpp"

#include <benchmark/benchmark.h>

using namespace dioph;

namespace {

const ApproxMatrix& golden() {
    static const ApproxMatrix A = ApproxMatrix::scalar(parse_exact_real("(-1+1*sqrt(5))/2"));
    return A;
}

const ApproxMatrix& plane() {
    static const ApproxMatrix A = ApproxMatrix(1, 2, {ExactReal::sqrt(2), parse_exact_real("(1+1*sqrt(2))/3")});
    return A;
}

void BM_OrbitTableBuild(benchmark::State& state) {
    const auto hi = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        OrbitTable t(golden(), 1, hi);
        benchmark::DoNotOptimize(t.size());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * hi));
}
BENCHMARK(BM_OrbitTableBuild)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

// Scan for the first q with ||q alpha - b|| < 1/(2|q|); most targets hit early.
void BM_FindFirst(benchmark::State& state) {
    const auto hi = static_cast<std::uint64_t>(state.range(0));
    const OrbitTable t(golden(), 1, hi);
    const PsiThreshold psi(ApproxFunction::power_log(BigRational(1, 2), 1));
    const ThresholdTable table(psi, 1, hi);
    SamplingOptions s;
    std::uint64_t i = 0;
    for (auto _ : state) {
        const auto b = sample_point(s, i++, 1);
        benchmark::DoNotOptimize(t.find_first(encode_target(b, 1), table, Relation::Less));
    }
}
BENCHMARK(BM_FindFirst)->Arg(1 << 16);

// Bad_A(delta) targets scan the whole window.
void BM_FullScan(benchmark::State& state) {
    const auto hi = static_cast<std::uint64_t>(state.range(0));
    const OrbitTable t(golden(), 1, hi);
    const PsiThreshold psi(ApproxFunction::power_log(BigRational(1, 100), 1));
    const ThresholdTable table(psi, 1, hi);
    const std::vector<BigRational> b{BigRational(1, 2)};
    const FixedTarget target = encode_target(b, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.find_first(target, table, Relation::Less));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(t.size()));
}
BENCHMARK(BM_FullScan)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_ExactDistance(benchmark::State& state) {
    const OrbitTable t(golden(), 1, 4096);
    const std::vector<BigRational> b{BigRational(1, 3)};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(t.exact_dist(i, b));
        i = (i + 1) % t.size();
    }
}
BENCHMARK(BM_ExactDistance);

void BM_WeylSum(benchmark::State& state) {
    const std::vector<BigInt> c{BigInt(1)};
    const auto N = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(weyl_sum(golden(), c, N));
    }
}
BENCHMARK(BM_WeylSum)->RangeMultiplier(10)->Range(100, 100000);

void BM_ReturnSequence2D(benchmark::State& state) {
    const long ell_max = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(return_sequence(plane(), parse_exact_real("2/5"), ell_max));
    }
}
BENCHMARK(BM_ReturnSequence2D)->DenseRange(4, 8, 2);

} // namespace

BENCHMARK_MAIN();
