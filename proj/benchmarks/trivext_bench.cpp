#include <benchmark/benchmark.h>

#include "trivext/budget.hpp"
#include "trivext/idealops.hpp"
#include "trivext/resolve.hpp"
#include "trivext/verify.hpp"
#include "trivext/zq.hpp"

namespace {

using namespace trivext;

RingPtr local_extension(std::int64_t n, std::size_t r) {
  RingPtr a = make_zmod(n);
  return trivial_extension(a, residue_field_power(a, r)).ring;
}

void BM_MakeZmod(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_zmod(state.range(0)));
}
BENCHMARK(BM_MakeZmod)->Arg(16)->Arg(256);

void BM_TrivialExtension(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(local_extension(4, state.range(0)));
}
BENCHMARK(BM_TrivialExtension)->Arg(1)->Arg(3)->Arg(6);

void BM_AllIdeals(benchmark::State& state) {
  RingPtr r = local_extension(4, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(all_ideals(r));
}
BENCHMARK(BM_AllIdeals)->Arg(1)->Arg(2)->Arg(3);

void BM_Annihilator(benchmark::State& state) {
  RingPtr r = local_extension(8, 5);
  Elem x = r->element(r->size() / 2 + 1);
  for (auto _ : state) benchmark::DoNotOptimize(annihilator(r, x));
}
BENCHMARK(BM_Annihilator);

void BM_MinimalSyzygy(benchmark::State& state) {
  RingPtr a = make_zmod(4);
  TrivialExtension t = trivial_extension(a, residue_field_power(a, 2));
  std::vector<Elem> gens = {t.embed({2}, {0, 0}), t.embed({0}, {1, 0}), t.embed({0}, {0, 1})};
  for (auto _ : state) benchmark::DoNotOptimize(minimal_syzygy(t.ring, gens));
}
BENCHMARK(BM_MinimalSyzygy);

void BM_WeakNdCheck(benchmark::State& state) {
  RingPtr r = local_extension(4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weak_nd_check_finite(r, 2, 0, 4, default_budget().max_ideals));
  }
}
BENCHMARK(BM_WeakNdCheck);

void BM_ZqIdealNf(benchmark::State& state) {
  std::vector<ZQElement> gens = {zq_make(12, 5, 7), zq_make(18, -3, 11), zq_make(30, 1, 2)};
  for (auto _ : state) benchmark::DoNotOptimize(zq_ideal_nf(gens));
}
BENCHMARK(BM_ZqIdealNf);

void BM_ZqSubmoduleNf(benchmark::State& state) {
  std::vector<ZQVector> gens = {
      {{2, 1, 0}, {1, 0, 3}}, {{0, 3, 1}, {0, 2, 1}}, {{1, 1, 1}, {5, 0, 0}}};
  for (auto _ : state) benchmark::DoNotOptimize(zq_submodule_nf(3, gens));
}
BENCHMARK(BM_ZqSubmoduleNf);

void BM_RunCheck(benchmark::State& state) {
  VerifyConfig config;
  config.max_ring = 64;
  InstanceSuite suite = generate_suite("small", config, 7);
  for (auto _ : state) benchmark::DoNotOptimize(run_check("ex2.4.ann", suite));
}
BENCHMARK(BM_RunCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
