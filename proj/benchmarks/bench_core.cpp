#include <benchmark/benchmark.h>

#include "pf/arith.hpp"
#include "pf/construction.hpp"
#include "pf/lseries.hpp"
#include "pf/purefield.hpp"
#include "pf/symbols.hpp"

namespace {

void BM_SegmentedSieve(benchmark::State& state) {
  std::uint64_t hi = state.range(0);
  for (auto _ : state) {
    std::uint64_t count = 0;
    pf::for_each_prime(1, hi, [&](std::uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hi));
}
BENCHMARK(BM_SegmentedSieve)->Arg(100'000)->Arg(1'000'000)->Arg(10'000'000);

void BM_FactorizeRange(benchmark::State& state) {
  std::uint64_t base = 1'000'000'000ULL;
  for (auto _ : state) {
    for (std::uint64_t n = base; n < base + 50; ++n)
      benchmark::DoNotOptimize(pf::factorize(pf::Int(n)));
  }
  state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_FactorizeRange);

void BM_FactorizeSemiprime(benchmark::State& state) {
  pf::Int n("1000048672023563");  // 30815443 * 32452841
  for (auto _ : state) benchmark::DoNotOptimize(pf::factorize(n));
}
BENCHMARK(BM_FactorizeSemiprime);

void BM_CharacterSum(benchmark::State& state) {
  std::uint64_t p = state.range(0);
  std::vector<unsigned> tuple{1, 2, 1};
  for (auto _ : state) benchmark::DoNotOptimize(pf::character_sum(tuple, p, 3));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p));
}
BENCHMARK(BM_CharacterSum)->Arg(499)->Arg(4999)->Arg(49999);

void BM_FindM0(benchmark::State& state) {
  std::uint64_t p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(pf::find_m0_mod_p(p, 3, 2, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p));
}
BENCHMARK(BM_FindM0)->Arg(4999)->Arg(49999);

void BM_EulerProxy(benchmark::State& state) {
  std::uint64_t cutoff = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(pf::log_l1_proxy(2, 3, cutoff));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cutoff));
}
BENCHMARK(BM_EulerProxy)->Arg(10'000)->Arg(100'000)->Arg(1'000'000);

void BM_MakePureField(benchmark::State& state) {
  pf::FieldOptions opts;
  opts.validate = state.range(0) != 0;
  std::uint64_t a = 1'000'000'007ULL * 3 * 3;
  for (auto _ : state)
    benchmark::DoNotOptimize(pf::make_pure_field(pf::Int(a), 3, opts));
}
BENCHMARK(BM_MakePureField)->Arg(0)->Arg(1);

void BM_DeskSieve(benchmark::State& state) {
  pf::CeilingOverrides o;
  o.small_prime_ceiling = 5;
  o.symbol_prime_ceiling = 7;
  o.z = 8;
  auto params = pf::derive_params(3, 2, 0.9, pf::Int(state.range(0)), o);
  auto target = pf::build_congruence_target(params);
  for (auto _ : state) {
    auto result = pf::sieve_admissible(target, params, pf::SieveMode::Direct);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_DeskSieve)->Arg(1'000'000'000)->Arg(64'000'000'000);

}  // namespace

BENCHMARK_MAIN();
