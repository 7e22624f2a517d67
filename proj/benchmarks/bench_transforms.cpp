#include <benchmark/benchmark.h>

#include "tauzak/random.hpp"
#include "tauzak/showcase.hpp"

namespace {

using namespace tauzak;

SemidirectSignal full_signal(const SystemPtr &sys, PortableRng &rng) {
    SemidirectSignal f(sys);
    for (std::size_t h = 0; h < sys->acting_group().size(); ++h) f.set_slice(h, random_signal(sys->group(), rng));
    return f;
}

SystemPtr heisenberg(std::int64_t N) {
    const std::vector<GroupElement> gens{GroupElement{{2, 0}}, GroupElement{{0, 2}}};
    return heisenberg_system(N, gens);
}

void BM_FourierDirect(benchmark::State &state) {
    const FiniteAbelianGroup K({state.range(0), state.range(0)});
    PortableRng rng(1);
    const auto v = random_signal(K, rng);
    for (auto _ : state) benchmark::DoNotOptimize(fourier(v));
    state.SetComplexityN(static_cast<std::int64_t>(K.order()));
}
BENCHMARK(BM_FourierDirect)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_FourierFast(benchmark::State &state) {
    const FiniteAbelianGroup K({state.range(0), state.range(0)});
    PortableRng rng(1);
    const auto v = random_signal(K, rng);
    for (auto _ : state) benchmark::DoNotOptimize(fourier_fast(v));
    state.SetComplexityN(static_cast<std::int64_t>(K.order()));
}
BENCHMARK(BM_FourierFast)->RangeMultiplier(2)->Range(4, 128)->Complexity();

void BM_ClassicalZak(benchmark::State &state) {
    const auto N = state.range(0);
    const FiniteAbelianGroup K({N, N});
    const auto D = ZakDomain::make(
        subgroup_from_generators(K, std::vector<GroupElement>{GroupElement{{2, 0}}, GroupElement{{0, 2}}}));
    PortableRng rng(2);
    const auto v = random_signal(K, rng);
    for (auto _ : state) benchmark::DoNotOptimize(zak(v, D));
}
BENCHMARK(BM_ClassicalZak)->RangeMultiplier(2)->Range(8, 64);

void BM_TauZakHeisenberg(benchmark::State &state) {
    const auto sys = heisenberg(state.range(0));
    PortableRng rng(3);
    const auto f = full_signal(sys, rng);
    for (auto _ : state) benchmark::DoNotOptimize(tau_zak(f));
}
BENCHMARK(BM_TauZakHeisenberg)->RangeMultiplier(2)->Range(4, 32);

void BM_QuasiPeriodicitySweep(benchmark::State &state) {
    const auto sys = heisenberg(state.range(0));
    PortableRng rng(4);
    const auto f = full_signal(sys, rng);
    const auto F = tau_zak(f);
    for (auto _ : state) benchmark::DoNotOptimize(verify_quasi_periodicity(F, f));
}
BENCHMARK(BM_QuasiPeriodicitySweep)->Arg(4)->Arg(8);

void BM_Sl2Isometry(benchmark::State &state) {
    const auto sys = sl2_system({Matrix2{}, Matrix2{1, 1, 0, 1}}, 1.0, 2.0, static_cast<std::size_t>(state.range(0)), 4.0);
    const PlaneSignal f{smooth_bump({0.3, 0.4}, 1.3), smooth_bump({-0.2, 0.5}, 1.1)};
    for (auto _ : state) benchmark::DoNotOptimize(sl2_isometry(sys, f));
}
BENCHMARK(BM_Sl2Isometry)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
